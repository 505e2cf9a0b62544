#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "scafnav/error.h"
#include "scafnav/smiles.h"

namespace scafnav {
namespace {

std::string atom_text(const MolGraph &g, int i) {
  const Atom &a = g.atom(i);
  const int h = g.hydrogen_count(i);
  std::string symbol(element_symbol(a.element));
  if (a.aromatic)
    symbol[0] = static_cast<char>(std::tolower(symbol[0]));

  if (is_organic_subset(a.element) && a.formal_charge == 0 &&
      h == g.implicit_hydrogens(i))
    return symbol;

  std::string out = "[" + symbol;
  if (h > 0) {
    out += 'H';
    if (h > 1)
      out += std::to_string(h);
  }
  if (a.formal_charge != 0) {
    out += a.formal_charge > 0 ? '+' : '-';
    const int m = std::abs(a.formal_charge);
    if (m > 1)
      out += std::to_string(m);
  }
  out += ']';
  return out;
}

std::string bond_text(const MolGraph &g, int b) {
  const Bond &bond = g.bond(b);
  switch (bond.order) {
  case BondOrder::kAromatic:
    return "";
  case BondOrder::kDouble:
    return "=";
  case BondOrder::kTriple:
    return "#";
  case BondOrder::kSingle:
    return g.atom(bond.begin).aromatic && g.atom(bond.end).aromatic ? "-"
                                                                     : "";
  }
  return "";
}

std::string ring_label(int digit) {
  if (digit < 10)
    return std::string(1, static_cast<char>('0' + digit));
  return "%" + std::to_string(digit);
}

class Writer {
public:
  Writer(const MolGraph &g, std::span<const int> ranks)
      : g_(g), ranks_(ranks), order_(g.num_atoms(), -1),
        offset_(g.num_atoms() + 1, 0), nbrs_(2 * g.num_bonds()),
        kids_(2 * g.num_bonds()), kid_count_(g.num_atoms(), 0),
        rings_(2 * g.num_bonds()), ring_count_(g.num_atoms(), 0),
        digit_of_bond_(g.num_bonds(), 0), bond_seen_(g.num_bonds(), 0) {
    const int n = g.num_atoms();
    for (int u = 0; u < n; ++u)
      offset_[u + 1] = offset_[u] + g.degree(u);
    for (int u = 0; u < n; ++u) {
      auto first = nbrs_.begin() + offset_[u];
      std::copy(g.neighbors(u).begin(), g.neighbors(u).end(), first);
      std::sort(first, nbrs_.begin() + offset_[u + 1],
                [&](const Neighbor &x, const Neighbor &y) {
                  return ranks_[x.atom] < ranks_[y.atom];
                });
    }
  }

  std::string run() {
    std::vector<int> by_rank(g_.num_atoms());
    for (int i = 0; i < g_.num_atoms(); ++i)
      by_rank[ranks_[i]] = i;
    std::string out;
    out.reserve(4 * g_.num_atoms());
    for (int start: by_rank) {
      if (order_[start] >= 0)
        continue;
      build_tree(start);
      if (!out.empty())
        out += '.';
      emit(start, out);
    }
    return out;
  }

private:
  // Depth-first spanning tree; non-tree bonds become ring closures.
  void build_tree(int root) {
    std::vector<std::pair<int, int>> stack;  // atom, next neighbor slot
    order_[root] = counter_++;
    stack.emplace_back(root, offset_[root]);
    while (!stack.empty()) {
      auto &[u, next] = stack.back();
      if (next == offset_[u + 1]) {
        stack.pop_back();
        continue;
      }
      const Neighbor nb = nbrs_[next++];
      if (bond_seen_[nb.bond])
        continue;
      bond_seen_[nb.bond] = 1;
      if (order_[nb.atom] < 0) {
        order_[nb.atom] = counter_++;
        kids_[offset_[u] + kid_count_[u]++] = nb;
        const int child = nb.atom;
        stack.emplace_back(child, offset_[child]);
      } else {
        rings_[offset_[u] + ring_count_[u]++] = nb;
        rings_[offset_[nb.atom] + ring_count_[nb.atom]++] = { u, nb.bond };
      }
    }
  }

  void emit(int u, std::string &out) {
    out += atom_text(g_, u);

    // Closures of rings opened earlier, then new openings.
    const auto first = rings_.begin() + offset_[u];
    const auto last = first + ring_count_[u];
    std::sort(first, last, [&](const Neighbor &x, const Neighbor &y) {
      const bool cx = order_[x.atom] < order_[u];
      const bool cy = order_[y.atom] < order_[u];
      if (cx != cy)
        return cx;
      if (cx)
        return order_[x.atom] < order_[y.atom];
      return ranks_[x.atom] < ranks_[y.atom];
    });
    const std::size_t mark = released_.size();
    for (auto it = first; it != last; ++it) {
      const Neighbor &nb = *it;
      if (order_[nb.atom] < order_[u]) {
        const int digit = digit_of_bond_[nb.bond];
        out += ring_label(digit);
        released_.push_back(digit);
      } else {
        int digit = 1;
        while (std::find(in_use_.begin(), in_use_.end(), digit) !=
               in_use_.end())
          ++digit;
        if (digit > 99)
          throw Error(ErrorCode::kSyntaxError, "too many open rings");
        in_use_.push_back(digit);
        digit_of_bond_[nb.bond] = digit;
        out += bond_text(g_, nb.bond);
        out += ring_label(digit);
      }
    }
    for (std::size_t k = mark; k < released_.size(); ++k)
      in_use_.erase(std::find(in_use_.begin(), in_use_.end(), released_[k]));
    released_.resize(mark);

    const int count = kid_count_[u];
    for (int k = 0; k < count; ++k) {
      const Neighbor kid = kids_[offset_[u] + k];
      const bool branch = k + 1 < count;
      if (branch)
        out += '(';
      out += bond_text(g_, kid.bond);
      emit(kid.atom, out);
      if (branch)
        out += ')';
    }
  }

  const MolGraph &g_;
  std::span<const int> ranks_;
  std::vector<int> order_;
  std::vector<int> offset_;
  std::vector<Neighbor> nbrs_;
  std::vector<Neighbor> kids_;
  std::vector<int> kid_count_;
  std::vector<Neighbor> rings_;
  std::vector<int> ring_count_;
  std::vector<int> digit_of_bond_;
  std::vector<char> bond_seen_;
  std::vector<int> in_use_;
  std::vector<int> released_;
  int counter_ = 0;
};

}  // namespace

std::string write_smiles(const MolGraph &g, std::span<const int> ranks) {
  return Writer(g, ranks).run();
}

std::string randomize_smiles(const MolGraph &g, std::uint64_t seed) {
  if (g.empty())
    throw Error(ErrorCode::kEmptyGraph, "cannot randomize an empty graph");
  std::vector<int> ranks(g.num_atoms());
  std::iota(ranks.begin(), ranks.end(), 0);
  std::mt19937_64 rng(seed);
  // Fisher-Yates with plain modulo draws keeps the stream portable across
  // standard library implementations.
  for (int i = g.num_atoms() - 1; i > 0; --i) {
    const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(ranks[i], ranks[j]);
  }
  return write_smiles(g, ranks);
}

}  // namespace scafnav
