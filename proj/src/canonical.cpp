#include "scafnav/canonical.h"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "scafnav/smiles.h"

namespace scafnav {
namespace {

// Ranks are cell start positions in the ordered partition: every atom in a
// cell of size k starting at position r carries rank r.
using Ranks = std::vector<int>;

class Canonicalizer {
public:
  explicit Canonicalizer(const MolGraph &g): g_(g) {
    const int n = g.num_atoms();
    const auto in_ring = ring_atoms(g);
    using Invariant = std::tuple<int, int, int, int, int, int>;
    std::vector<Invariant> inv(n);
    for (int i = 0; i < n; ++i) {
      const Atom &a = g.atom(i);
      inv[i] = { a.element, g.degree(i), a.formal_charge, a.aromatic ? 1 : 0,
                 in_ring[i] ? 1 : 0, g.hydrogen_count(i) };
    }
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int x, int y) { return inv[x] < inv[y]; });
    offset_.assign(n + 1, 0);
    for (int i = 0; i < n; ++i)
      offset_[i + 1] = offset_[i] + g.degree(i);
    initial_.assign(n, 0);
    for (int k = 0; k < n; ++k) {
      if (k > 0 && inv[idx[k]] == inv[idx[k - 1]])
        initial_[idx[k]] = initial_[idx[k - 1]];
      else
        initial_[idx[k]] = k;
    }
  }

  void run() {
    Ranks ranks = initial_;
    search(ranks);
  }

  int leaves() const { return leaves_; }

  const Ranks &best_ranks() const { return best_ranks_; }
  const std::string &best_smiles() const { return best_smiles_; }

private:
  int count_cells(const Ranks &ranks) const {
    seen_.assign(ranks.size(), 0);
    int cells = 0;
    for (int r: ranks)
      if (!seen_[r]) {
        seen_[r] = 1;
        ++cells;
      }
    return cells;
  }

  // Splits cells by the multiset of (neighbor rank, bond order) until the
  // partition is equitable.
  void refine(Ranks &ranks) const {
    const int n = g_.num_atoms();
    int cells = count_cells(ranks);
    sig_.resize(offset_[n]);
    idx_.resize(n);
    auto sig_less = [&](int x, int y) {
      return std::lexicographical_compare(
          sig_.begin() + offset_[x], sig_.begin() + offset_[x + 1],
          sig_.begin() + offset_[y], sig_.begin() + offset_[y + 1]);
    };
    auto sig_equal = [&](int x, int y) {
      return std::equal(sig_.begin() + offset_[x],
                        sig_.begin() + offset_[x + 1],
                        sig_.begin() + offset_[y],
                        sig_.begin() + offset_[y + 1]);
    };
    while (cells < n) {
      for (int i = 0; i < n; ++i) {
        int k = offset_[i];
        for (const auto &nb: g_.neighbors(i))
          sig_[k++] = ranks[nb.atom] * 8 +
                      static_cast<int>(g_.bond(nb.bond).order);
        std::sort(sig_.begin() + offset_[i], sig_.begin() + offset_[i + 1]);
      }
      std::iota(idx_.begin(), idx_.end(), 0);
      std::sort(idx_.begin(), idx_.end(), [&](int x, int y) {
        if (ranks[x] != ranks[y])
          return ranks[x] < ranks[y];
        return sig_less(x, y);
      });
      next_.resize(n);
      for (int k = 0; k < n; ++k) {
        const int cur = idx_[k];
        if (k > 0) {
          const int prev = idx_[k - 1];
          if (ranks[cur] == ranks[prev] && sig_equal(cur, prev)) {
            next_[cur] = next_[prev];
            continue;
          }
        }
        next_[cur] = k;
      }
      const int new_cells = count_cells(next_);
      ranks.swap(next_);
      if (new_cells == cells)
        break;
      cells = new_cells;
    }
  }

  // Atoms u, v are twins when swapping them is an automorphism: same
  // neighbors (other than each other) through bonds of the same order.
  bool twins(int u, int v) const {
    if (g_.degree(u) != g_.degree(v))
      return false;
    for (const auto &nb: g_.neighbors(u)) {
      if (nb.atom == v)
        continue;
      const auto other = g_.bond_between(v, nb.atom);
      if (!other || g_.bond(*other).order != g_.bond(nb.bond).order)
        return false;
    }
    return true;
  }

  void search(Ranks &ranks) {
    if (leaves_ >= kCanonicalLeafBudget)
      return;
    refine(ranks);
    const int n = g_.num_atoms();

    // First non-singleton cell in rank order.
    std::vector<int> cell_size(n, 0);
    for (int r: ranks)
      ++cell_size[r];
    int target = -1;
    for (int r = 0; r < n; ++r)
      if (cell_size[r] > 1) {
        target = r;
        break;
      }

    if (target < 0) {
      ++leaves_;
      std::string smiles = write_smiles(g_, ranks);
      if (first_ranks_.empty()) {
        first_ranks_ = ranks;
        first_smiles_ = smiles;
      } else if (smiles == first_smiles_) {
        record_automorphism(first_ranks_, ranks);
      }
      if (best_ranks_.empty() || smiles < best_smiles_) {
        best_smiles_ = std::move(smiles);
        best_ranks_ = ranks;
      } else if (smiles == best_smiles_ && best_ranks_ != first_ranks_) {
        record_automorphism(best_ranks_, ranks);
      }
      return;
    }

    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (ranks[i] == target)
        members.push_back(i);
    std::vector<int> representatives;
    for (int v: members) {
      const bool covered =
          std::any_of(representatives.begin(), representatives.end(),
                      [&](int rep) { return twins(rep, v); });
      if (!covered)
        representatives.push_back(v);
    }

    std::vector<int> explored;
    for (int v: representatives) {
      if (leaves_ >= kCanonicalLeafBudget)
        break;
      if (!explored.empty() && same_orbit(v, explored))
        continue;
      explored.push_back(v);
      Ranks child = ranks;
      for (int u: members)
        if (u != v)
          child[u] = target + 1;
      path_.push_back(v);
      search(child);
      path_.pop_back();
    }
  }

  // Leaves with equal strings differ by a relabeling; keep it when it is a
  // true automorphism.
  void record_automorphism(const Ranks &a, const Ranks &b) {
    const int n = g_.num_atoms();
    std::vector<int> atom_at(n);
    for (int i = 0; i < n; ++i)
      atom_at[b[i]] = i;
    std::vector<int> gamma(n);
    bool identity = true;
    for (int i = 0; i < n; ++i) {
      gamma[i] = atom_at[a[i]];
      identity = identity && gamma[i] == i;
    }
    if (identity)
      return;
    for (int i = 0; i < n; ++i)
      if (!(g_.atom(i) == g_.atom(gamma[i])) ||
          g_.degree(i) != g_.degree(gamma[i]))
        return;
    for (int e = 0; e < g_.num_bonds(); ++e) {
      const Bond &bond = g_.bond(e);
      const auto image = g_.bond_between(gamma[bond.begin], gamma[bond.end]);
      if (!image || g_.bond(*image).order != bond.order)
        return;
    }
    generators_.push_back(std::move(gamma));
  }

  // Orbit test under the generators that fix the current path pointwise.
  bool same_orbit(int v, const std::vector<int> &explored) const {
    const int n = g_.num_atoms();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x)
        x = parent[x] = parent[parent[x]];
      return x;
    };
    bool any = false;
    for (const auto &gamma: generators_) {
      const bool fixes = std::all_of(path_.begin(), path_.end(),
                                     [&](int p) { return gamma[p] == p; });
      if (!fixes)
        continue;
      any = true;
      for (int i = 0; i < n; ++i)
        parent[find(i)] = find(gamma[i]);
    }
    if (!any)
      return false;
    const int root = find(v);
    return std::any_of(explored.begin(), explored.end(),
                       [&](int w) { return find(w) == root; });
  }

  const MolGraph &g_;
  std::vector<int> offset_;
  mutable std::vector<int> sig_;
  mutable std::vector<int> idx_;
  mutable Ranks next_;
  mutable std::vector<char> seen_;
  Ranks initial_;
  Ranks first_ranks_;
  std::string first_smiles_;
  std::vector<std::vector<int>> generators_;
  std::vector<int> path_;
  Ranks best_ranks_;
  std::string best_smiles_;
  int leaves_ = 0;
};

}  // namespace

std::vector<int> canonical_ranks(const MolGraph &g) {
  if (g.empty())
    return {};
  Canonicalizer c(g);
  c.run();
  return c.best_ranks();
}

std::string write_canonical(const MolGraph &g) {
  if (g.empty())
    return {};
  Canonicalizer c(g);
  c.run();
  return c.best_smiles();
}

std::string canonicalize(std::string_view text) {
  return write_canonical(parse_smiles(text));
}

}  // namespace scafnav
