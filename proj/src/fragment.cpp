#include "scafnav/fragment.h"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "scafnav/canonical.h"
#include "scafnav/error.h"
#include "scafnav/rings.h"
#include "scafnav/smiles.h"

namespace scafnav {

MolGraph scaffold_graph(const Scaffold &s) {
  if (s.key.empty())
    return {};
  MolGraph g;
  try {
    g = parse_smiles(s.key);
  } catch (const Error &e) {
    throw Error(ErrorCode::kInvalidScaffold,
                "scaffold key does not parse: " + e.detail());
  }
  int components = 0;
  g.component_ids(&components);
  if (components != 1 || write_canonical(g) != s.key ||
      write_canonical(murcko_scaffold(g)) != s.key)
    throw Error(ErrorCode::kInvalidScaffold,
                "'" + s.key + "' is not a canonical scaffold");
  return g;
}

std::vector<Scaffold> fragment_graph_once(const MolGraph &framework) {
  const int rings_in = ring_count(framework);
  if (rings_in <= 1)
    return {};

  const auto rings = sssr(framework);
  std::vector<int> atom_rings(framework.num_atoms(), 0);
  std::vector<int> bond_rings(framework.num_bonds(), 0);
  for (const auto &r: rings) {
    for (int a: r.atoms)
      ++atom_rings[a];
    for (int b: r.bonds)
      ++bond_rings[b];
  }

  std::map<std::string, Scaffold> found;
  for (const auto &r: rings) {
    std::vector<bool> keep_atom(framework.num_atoms(), true);
    std::vector<bool> keep_bond(framework.num_bonds(), true);
    for (int a: r.atoms)
      if (atom_rings[a] == 1)
        keep_atom[a] = false;
    for (int b: r.bonds)
      if (bond_rings[b] == 1)
        keep_bond[b] = false;
    const MolGraph rest = capped_subgraph(framework, keep_atom, keep_bond);

    int count = 0;
    const auto comp = rest.component_ids(&count);
    std::vector<int> comp_bonds(count, 0), comp_atoms(count, 0);
    for (int i = 0; i < rest.num_atoms(); ++i)
      ++comp_atoms[comp[i]];
    for (const auto &b: rest.bonds())
      ++comp_bonds[comp[b.begin]];
    int cyclic = -1;
    int cyclic_count = 0;
    for (int c = 0; c < count; ++c) {
      if (comp_bonds[c] - comp_atoms[c] + 1 > 0) {
        cyclic = c;
        ++cyclic_count;
      }
    }
    if (cyclic_count != 1)
      continue;

    std::vector<bool> keep(rest.num_atoms());
    for (int i = 0; i < rest.num_atoms(); ++i)
      keep[i] = comp[i] == cyclic;
    const MolGraph piece = murcko_scaffold(rest.subgraph(keep));
    Scaffold s;
    s.ring_count = ring_count(piece);
    if (s.ring_count != rings_in - 1)
      continue;
    s.key = write_canonical(piece);
    found.emplace(s.key, std::move(s));
  }

  std::vector<Scaffold> out;
  out.reserve(found.size());
  for (auto &[key, s]: found)
    out.push_back(std::move(s));
  return out;
}

std::vector<Scaffold> fragment_once(const Scaffold &s) {
  if (s.ring_count <= 1)
    return {};
  return fragment_graph_once(scaffold_graph(s));
}

std::vector<Scaffold> lower_cone(const Scaffold &s) {
  std::map<std::string, Scaffold> seen;
  std::deque<Scaffold> queue { s };
  while (!queue.empty()) {
    const Scaffold cur = std::move(queue.front());
    queue.pop_front();
    for (auto &p: fragment_once(cur)) {
      if (seen.contains(p.key))
        continue;
      seen.emplace(p.key, p);
      queue.push_back(std::move(p));
    }
  }
  std::vector<Scaffold> out;
  for (auto &[key, p]: seen)
    out.push_back(std::move(p));
  return out;
}

namespace {

class Matcher {
public:
  Matcher(const MolGraph &pattern, const MolGraph &target, std::int64_t budget)
      : p_(pattern), t_(target), budget_(budget),
        map_(pattern.num_atoms(), -1), used_(target.num_atoms(), false) {
    plan();
  }

  bool run() { return extend(0); }

private:
  // Visit pattern atoms so that each one after a component's first has an
  // already-placed neighbor; components start from their highest degree.
  void plan() {
    const int n = p_.num_atoms();
    std::vector<bool> placed(n, false);
    while (static_cast<int>(order_.size()) < n) {
      int start = -1;
      for (int i = 0; i < n; ++i)
        if (!placed[i] && (start < 0 || p_.degree(i) > p_.degree(start)))
          start = i;
      std::deque<int> queue { start };
      placed[start] = true;
      order_.push_back(start);
      anchor_.push_back(-1);
      while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (const auto &nb: p_.neighbors(u)) {
          if (placed[nb.atom])
            continue;
          placed[nb.atom] = true;
          order_.push_back(nb.atom);
          anchor_.push_back(u);
          queue.push_back(nb.atom);
        }
      }
    }
  }

  bool feasible(int p, int t) const {
    if (used_[t] || !atoms_compatible(p_.atom(p), t_.atom(t)) ||
        t_.degree(t) < p_.degree(p))
      return false;
    for (const auto &nb: p_.neighbors(p)) {
      const int mapped = map_[nb.atom];
      if (mapped < 0)
        continue;
      const auto tb = t_.bond_between(t, mapped);
      if (!tb || t_.bond(*tb).order != p_.bond(nb.bond).order)
        return false;
    }
    return true;
  }

  bool try_pair(int k, int p, int t) {
    if (++expansions_ > budget_)
      throw Error(ErrorCode::kTimeout,
                  "substructure search exceeded its expansion budget");
    if (!feasible(p, t))
      return false;
    map_[p] = t;
    used_[t] = true;
    if (extend(k + 1))
      return true;
    map_[p] = -1;
    used_[t] = false;
    return false;
  }

  bool extend(std::size_t k) {
    if (k == order_.size())
      return true;
    const int p = order_[k];
    const int anchor = anchor_[k];
    if (anchor >= 0) {
      for (const auto &nb: t_.neighbors(map_[anchor]))
        if (try_pair(static_cast<int>(k), p, nb.atom))
          return true;
      return false;
    }
    for (int t = 0; t < t_.num_atoms(); ++t)
      if (try_pair(static_cast<int>(k), p, t))
        return true;
    return false;
  }

  const MolGraph &p_;
  const MolGraph &t_;
  std::int64_t budget_;
  std::int64_t expansions_ = 0;
  std::vector<int> order_;
  std::vector<int> anchor_;
  std::vector<int> map_;
  std::vector<bool> used_;
};

}  // namespace

bool is_substructure(const MolGraph &pattern, const MolGraph &target,
                     std::int64_t budget) {
  if (pattern.num_atoms() > target.num_atoms() ||
      pattern.num_bonds() > target.num_bonds())
    return false;
  if (pattern.empty())
    return true;
  return Matcher(pattern, target, budget).run();
}

}  // namespace scafnav
