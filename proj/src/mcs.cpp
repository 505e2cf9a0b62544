#include "scafnav/mcs.h"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>

#include "scafnav/canonical.h"
#include "scafnav/fragment.h"
#include "scafnav/smiles.h"

namespace scafnav {
namespace {

enum class BondState : std::uint8_t { kOpen, kMatched, kExcluded };

// Subgraph of `g` carrying only what the match compares: hydrogen counts,
// isotopes and stereo of the source are dropped.
MolGraph common_subgraph(const MolGraph &g, const std::vector<bool> &keep_atom,
                         const std::vector<bool> &keep_bond) {
  MolGraph out = g.subgraph(keep_atom, keep_bond);
  for (int i = 0; i < out.num_atoms(); ++i) {
    Atom &atom = out.atom(i);
    atom.explicit_h.reset();
    atom.isotope.reset();
    atom.chirality = Chirality::kNone;
  }
  return out;
}

class McsSearch {
public:
  McsSearch(const MolGraph &a, const MolGraph &b, std::int64_t budget)
      : a_(a), b_(b), budget_(budget), map_(a.num_atoms(), -1),
        b_used_(b.num_atoms(), false), state_(a.num_bonds()),
        b_bond_used_(b.num_bonds(), false) {
    // Bond labels for the counting bound.
    auto atom_label = [](const Atom &x) {
      return std::tuple(x.element, x.aromatic, x.formal_charge);
    };
    std::map<std::tuple<std::tuple<int, bool, int>, std::tuple<int, bool, int>,
                        int>,
             int>
        ids;
    auto label_of = [&](const MolGraph &g, const Bond &bd) {
      auto x = atom_label(g.atom(bd.begin));
      auto y = atom_label(g.atom(bd.end));
      if (y < x)
        std::swap(x, y);
      const auto key = std::tuple(x, y, static_cast<int>(bd.order));
      return ids.try_emplace(key, static_cast<int>(ids.size())).first->second;
    };
    for (const auto &bd: a.bonds())
      a_label_.push_back(label_of(a, bd));
    for (const auto &bd: b.bonds())
      b_label_.push_back(label_of(b, bd));
    num_labels_ = static_cast<int>(ids.size());
  }

  McsResult run() {
    for (int seed = 0; seed < a_.num_atoms() && !out_of_budget_; ++seed) {
      for (int t = 0; t < b_.num_atoms() && !out_of_budget_; ++t) {
        if (!atoms_compatible(a_.atom(seed), b_.atom(t)))
          continue;
        // Bonds to earlier seeds were covered by those seeds' searches.
        std::fill(state_.begin(), state_.end(), BondState::kOpen);
        for (int e = 0; e < a_.num_bonds(); ++e) {
          const Bond &bd = a_.bond(e);
          if (bd.begin < seed || bd.end < seed)
            state_[e] = BondState::kExcluded;
        }
        map_[seed] = t;
        b_used_[t] = true;
        grow();
        map_[seed] = -1;
        b_used_[t] = false;
      }
    }

    McsResult result;
    result.exhausted = !out_of_budget_;
    if (!have_best_)
      return result;
    std::vector<bool> keep_atom(a_.num_atoms(), false);
    std::vector<bool> keep_bond(a_.num_bonds(), false);
    for (const auto &[x, y]: best_map_)
      keep_atom[x] = true;
    for (int e: best_bonds_)
      keep_bond[e] = true;
    result.common = common_subgraph(a_, keep_atom, keep_bond);
    for (const auto &[x, y]: best_map_) {
      result.map_a.push_back(x);
      result.map_b.push_back(y);
    }
    return result;
  }

private:
  int upper_bound() const {
    std::vector<int> open_a(num_labels_, 0), open_b(num_labels_, 0);
    for (int e = 0; e < a_.num_bonds(); ++e)
      if (state_[e] == BondState::kOpen)
        ++open_a[a_label_[e]];
    for (int f = 0; f < b_.num_bonds(); ++f)
      if (!b_bond_used_[f])
        ++open_b[b_label_[f]];
    int extra = 0;
    for (int l = 0; l < num_labels_; ++l)
      extra += std::min(open_a[l], open_b[l]);
    return matched_ + extra;
  }

  void consider_solution() {
    std::vector<int> bonds;
    for (int e = 0; e < a_.num_bonds(); ++e)
      if (state_[e] == BondState::kMatched)
        bonds.push_back(e);
    std::vector<std::pair<int, int>> mapping;
    for (int x = 0; x < a_.num_atoms(); ++x)
      if (map_[x] >= 0)
        mapping.emplace_back(x, map_[x]);

    const int size = static_cast<int>(bonds.size());
    if (have_best_ && size < best_size_)
      return;
    const std::string &canon = canonical_for(bonds, mapping);
    if (have_best_ && size == best_size_) {
      if (canon > best_canonical_)
        return;
      if (canon == best_canonical_ && mapping >= best_map_)
        return;
    }
    have_best_ = true;
    best_size_ = size;
    best_canonical_ = canon;
    best_bonds_ = std::move(bonds);
    best_map_ = std::move(mapping);
  }

  const std::string &canonical_for(const std::vector<int> &bonds,
                                   const std::vector<std::pair<int, int>> &m) {
    std::string key;
    for (const auto &[x, y]: m)
      key += std::to_string(x) + ',';
    key += '|';
    for (int e: bonds)
      key += std::to_string(e) + ',';
    auto it = canon_cache_.find(key);
    if (it != canon_cache_.end())
      return it->second;
    std::vector<bool> keep_atom(a_.num_atoms(), false);
    std::vector<bool> keep_bond(a_.num_bonds(), false);
    for (const auto &[x, y]: m)
      keep_atom[x] = true;
    for (int e: bonds)
      keep_bond[e] = true;
    return canon_cache_
        .emplace(std::move(key),
                 write_canonical(common_subgraph(a_, keep_atom, keep_bond)))
        .first->second;
  }

  void grow() {
    if (out_of_budget_)
      return;
    if (++expansions_ > budget_) {
      out_of_budget_ = true;
      return;
    }

    int frontier = -1;
    for (int e = 0; e < a_.num_bonds(); ++e) {
      if (state_[e] != BondState::kOpen)
        continue;
      const Bond &bd = a_.bond(e);
      if (map_[bd.begin] >= 0 || map_[bd.end] >= 0) {
        frontier = e;
        break;
      }
    }
    if (frontier < 0) {
      consider_solution();
      return;
    }
    if (have_best_ && upper_bound() < best_size_)
      return;

    const Bond &bd = a_.bond(frontier);
    const int u = map_[bd.begin] >= 0 ? bd.begin : bd.end;
    const int v = bd.other(u);
    const int bu = map_[u];

    state_[frontier] = BondState::kMatched;
    ++matched_;
    if (map_[v] >= 0) {
      const auto f = b_.bond_between(bu, map_[v]);
      if (f && !b_bond_used_[*f] && b_.bond(*f).order == bd.order) {
        b_bond_used_[*f] = true;
        grow();
        b_bond_used_[*f] = false;
      }
    } else {
      for (const auto &nb: b_.neighbors(bu)) {
        if (b_used_[nb.atom] || b_bond_used_[nb.bond] ||
            b_.bond(nb.bond).order != bd.order ||
            !atoms_compatible(a_.atom(v), b_.atom(nb.atom)))
          continue;
        map_[v] = nb.atom;
        b_used_[nb.atom] = true;
        b_bond_used_[nb.bond] = true;
        grow();
        b_bond_used_[nb.bond] = false;
        b_used_[nb.atom] = false;
        map_[v] = -1;
      }
    }
    --matched_;

    state_[frontier] = BondState::kExcluded;
    grow();
    state_[frontier] = BondState::kOpen;
  }

  const MolGraph &a_;
  const MolGraph &b_;
  std::int64_t budget_;
  std::int64_t expansions_ = 0;
  bool out_of_budget_ = false;

  std::vector<int> map_;
  std::vector<bool> b_used_;
  std::vector<BondState> state_;
  std::vector<bool> b_bond_used_;
  int matched_ = 0;

  std::vector<int> a_label_, b_label_;
  int num_labels_ = 0;

  bool have_best_ = false;
  int best_size_ = 0;
  std::string best_canonical_;
  std::vector<int> best_bonds_;
  std::vector<std::pair<int, int>> best_map_;
  std::map<std::string, std::string> canon_cache_;
};

}  // namespace

McsResult maximum_common_substructure(const MolGraph &a, const MolGraph &b,
                                      std::int64_t budget) {
  return McsSearch(a, b, budget).run();
}

McsResult intersection(const Scaffold &s1, const Scaffold &s2,
                       std::int64_t budget) {
  const MolGraph a = s1.key.empty() ? MolGraph {} : parse_smiles(s1.key);
  const MolGraph b = s2.key.empty() ? MolGraph {} : parse_smiles(s2.key);
  return maximum_common_substructure(a, b, budget);
}

}  // namespace scafnav
