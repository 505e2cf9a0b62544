#include "scafnav/molgraph.h"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>

#include "scafnav/canonical.h"
#include "scafnav/error.h"

namespace scafnav {
namespace {

struct ElementInfo {
  int number;
  std::string_view symbol;
  bool organic;
  std::array<int, 3> valences;  // 0-padded
};

constexpr std::array<ElementInfo, 14> kElements = { {
    { element::kH, "H", false, { 1, 0, 0 } },
    { element::kB, "B", true, { 3, 0, 0 } },
    { element::kC, "C", true, { 4, 0, 0 } },
    { element::kN, "N", true, { 3, 0, 0 } },
    { element::kO, "O", true, { 2, 0, 0 } },
    { element::kF, "F", true, { 1, 0, 0 } },
    { element::kSi, "Si", false, { 4, 0, 0 } },
    { element::kP, "P", true, { 3, 5, 0 } },
    { element::kS, "S", true, { 2, 4, 6 } },
    { element::kCl, "Cl", true, { 1, 0, 0 } },
    { element::kAs, "As", false, { 3, 5, 0 } },
    { element::kSe, "Se", false, { 2, 4, 6 } },
    { element::kBr, "Br", true, { 1, 0, 0 } },
    { element::kI, "I", true, { 1, 0, 0 } },
} };

const ElementInfo *find_element(int number) {
  for (const auto &e: kElements)
    if (e.number == number)
      return &e;
  return nullptr;
}

}  // namespace

std::string_view element_symbol(int atomic_number) {
  const auto *e = find_element(atomic_number);
  return e == nullptr ? std::string_view("?") : e->symbol;
}

int element_from_symbol(std::string_view symbol) {
  for (const auto &e: kElements)
    if (e.symbol == symbol)
      return e.number;
  return 0;
}

bool is_organic_subset(int atomic_number) {
  const auto *e = find_element(atomic_number);
  return e != nullptr && e->organic;
}

std::span<const int> default_valences(int atomic_number) {
  const auto *e = find_element(atomic_number);
  if (e == nullptr)
    return {};
  std::size_t n = 0;
  while (n < e->valences.size() && e->valences[n] != 0)
    ++n;
  return { e->valences.data(), n };
}

int MolGraph::add_atom(const Atom &atom) {
  atoms_.push_back(atom);
  adj_.emplace_back().reserve(4);
  return num_atoms() - 1;
}

int MolGraph::add_bond(int begin, int end, BondOrder order,
                       bool directional) {
  if (begin == end)
    throw Error(ErrorCode::kSyntaxError, "bond from an atom to itself");
  if (bond_between(begin, end))
    throw Error(ErrorCode::kSyntaxError, "duplicate bond between atoms");
  const int idx = num_bonds();
  bonds_.push_back({ begin, end, order, directional });
  adj_[begin].push_back({ end, idx });
  adj_[end].push_back({ begin, idx });
  return idx;
}

std::optional<int> MolGraph::bond_between(int a, int b) const {
  const auto &na = adj_[a];
  const auto &nb = adj_[b];
  const auto &shorter = na.size() <= nb.size() ? na : nb;
  const int target = na.size() <= nb.size() ? b : a;
  for (const auto &n: shorter)
    if (n.atom == target)
      return n.bond;
  return std::nullopt;
}

int MolGraph::bond_order_sum(int atom) const {
  int sum = 0;
  for (const auto &n: adj_[atom])
    sum += valence_contribution(bonds_[n.bond].order);
  return sum;
}

bool MolGraph::has_aromatic_bond(int atom) const {
  return std::any_of(adj_[atom].begin(), adj_[atom].end(),
                     [&](const Neighbor &n) {
                       return bonds_[n.bond].order == BondOrder::kAromatic;
                     });
}

int MolGraph::implicit_hydrogens(int atom) const {
  const Atom &a = atoms_[atom];
  int used = bond_order_sum(atom);
  // An aromatic atom donates one extra bond to its pi system.
  if (a.aromatic && has_aromatic_bond(atom))
    ++used;
  for (int v: default_valences(a.element))
    if (v >= used)
      return v - used;
  return 0;
}

int MolGraph::hydrogen_count(int atom) const {
  const Atom &a = atoms_[atom];
  if (a.explicit_h)
    return *a.explicit_h;
  return implicit_hydrogens(atom);
}

std::vector<int> MolGraph::component_ids(int *num_components) const {
  std::vector<int> comp(atoms_.size(), -1);
  std::vector<int> stack;
  int count = 0;
  for (int start = 0; start < num_atoms(); ++start) {
    if (comp[start] >= 0)
      continue;
    comp[start] = count;
    stack.push_back(start);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto &n: adj_[u]) {
        if (comp[n.atom] < 0) {
          comp[n.atom] = count;
          stack.push_back(n.atom);
        }
      }
    }
    ++count;
  }
  if (num_components != nullptr)
    *num_components = count;
  return comp;
}

MolGraph MolGraph::subgraph(const std::vector<bool> &keep_atom,
                            const std::vector<bool> &keep_bond,
                            std::vector<int> *old_to_new) const {
  MolGraph out;
  std::vector<int> map(atoms_.size(), -1);
  for (int i = 0; i < num_atoms(); ++i)
    if (keep_atom[i])
      map[i] = out.add_atom(atoms_[i]);
  for (int b = 0; b < num_bonds(); ++b) {
    const Bond &bond = bonds_[b];
    if (keep_bond[b] && map[bond.begin] >= 0 && map[bond.end] >= 0)
      out.add_bond(map[bond.begin], map[bond.end], bond.order,
                   bond.directional);
  }
  if (old_to_new != nullptr)
    *old_to_new = std::move(map);
  return out;
}

MolGraph MolGraph::subgraph(const std::vector<bool> &keep_atom,
                            std::vector<int> *old_to_new) const {
  return subgraph(keep_atom, std::vector<bool>(bonds_.size(), true),
                  old_to_new);
}

MolGraph MolGraph::permuted(std::span<const int> order) const {
  MolGraph out;
  std::vector<int> inverse(atoms_.size());
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    inverse[order[i]] = i;
    out.add_atom(atoms_[order[i]]);
  }
  std::vector<Bond> relabeled = bonds_;
  for (auto &b: relabeled) {
    b.begin = inverse[b.begin];
    b.end = inverse[b.end];
    if (b.begin > b.end)
      std::swap(b.begin, b.end);
  }
  std::sort(relabeled.begin(), relabeled.end(),
            [](const Bond &x, const Bond &y) {
              return std::pair(x.begin, x.end) < std::pair(y.begin, y.end);
            });
  for (const auto &b: relabeled)
    out.add_bond(b.begin, b.end, b.order, b.directional);
  return out;
}

MolGraph capped_subgraph(const MolGraph &g, const std::vector<bool> &keep_atom,
                         const std::vector<bool> &keep_bond) {
  std::vector<int> map;
  MolGraph out = g.subgraph(keep_atom, keep_bond, &map);
  for (int i = 0; i < g.num_atoms(); ++i) {
    if (!keep_atom[i])
      continue;
    const Atom &a = g.atom(i);
    if (!a.explicit_h && !a.aromatic)
      continue;
    int lost = 0;
    for (const auto &nb: g.neighbors(i))
      if (!keep_atom[nb.atom] || !keep_bond[nb.bond])
        lost += valence_contribution(g.bond(nb.bond).order);
    if (lost > 0)
      out.atom(map[i]).explicit_h = g.hydrogen_count(i) + lost;
  }
  return out;
}

int ring_count(const MolGraph &g) {
  int components = 0;
  g.component_ids(&components);
  return g.num_bonds() - g.num_atoms() + components;
}

std::vector<bool> ring_bonds(const MolGraph &g) {
  // Iterative Tarjan bridge finding; every non-bridge lies on a cycle.
  const int n = g.num_atoms();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> in_ring(g.num_bonds(), true);
  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;
  int timer = 0;
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0)
      continue;
    disc[root] = low[root] = timer++;
    stack.push_back({ root, -1, 0 });
    while (!stack.empty()) {
      Frame &f = stack.back();
      const auto nbrs = g.neighbors(f.atom);
      if (f.next < nbrs.size()) {
        const Neighbor nb = nbrs[f.next++];
        if (nb.bond == f.parent_bond)
          continue;
        if (disc[nb.atom] >= 0) {
          low[f.atom] = std::min(low[f.atom], disc[nb.atom]);
        } else {
          disc[nb.atom] = low[nb.atom] = timer++;
          stack.push_back({ nb.atom, nb.bond, 0 });
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        const int parent = stack.back().atom;
        low[parent] = std::min(low[parent], low[done.atom]);
        if (low[done.atom] > disc[parent])
          in_ring[done.parent_bond] = false;
      }
    }
  }
  return in_ring;
}

std::vector<bool> ring_atoms(const MolGraph &g) {
  const auto rb = ring_bonds(g);
  std::vector<bool> out(g.num_atoms(), false);
  for (int b = 0; b < g.num_bonds(); ++b) {
    if (rb[b]) {
      out[g.bond(b).begin] = true;
      out[g.bond(b).end] = true;
    }
  }
  return out;
}

MolGraph largest_component(const MolGraph &g) {
  int count = 0;
  const auto comp = g.component_ids(&count);
  if (count <= 1)
    return g;
  std::vector<int> sizes(count, 0);
  for (int c: comp)
    ++sizes[c];
  const int best_size = *std::max_element(sizes.begin(), sizes.end());
  MolGraph best;
  std::string best_key;
  bool have = false;
  for (int c = 0; c < count; ++c) {
    if (sizes[c] != best_size)
      continue;
    std::vector<bool> keep(g.num_atoms());
    for (int i = 0; i < g.num_atoms(); ++i)
      keep[i] = comp[i] == c;
    MolGraph part = g.subgraph(keep);
    std::string key = write_canonical(part);
    if (!have || key < best_key) {
      best = std::move(part);
      best_key = std::move(key);
      have = true;
    }
  }
  return best;
}

}  // namespace scafnav
