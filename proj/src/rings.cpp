#include "scafnav/rings.h"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <set>

namespace scafnav {
namespace {

using BitRow = std::vector<std::uint64_t>;

struct Candidate {
  std::vector<int> atoms;  // cycle order
  std::vector<int> bonds;
  std::vector<int> sorted_atoms;
  BitRow row;
};

BitRow bond_row(const std::vector<int> &bonds, int num_bonds) {
  BitRow row((num_bonds + 63) / 64, 0);
  for (int b: bonds)
    row[b / 64] |= std::uint64_t { 1 } << (b % 64);
  return row;
}

// Incremental GF(2) elimination over bond incidence vectors.
class CycleSpaceBasis {
public:
  bool add_if_independent(BitRow row) {
    for (const auto &[pivot, basis_row]: rows_) {
      if ((row[pivot / 64] >> (pivot % 64)) & 1U)
        for (std::size_t w = 0; w < row.size(); ++w)
          row[w] ^= basis_row[w];
    }
    for (std::size_t w = 0; w < row.size(); ++w) {
      if (row[w] != 0) {
        const int pivot =
            static_cast<int>(w * 64) + __builtin_ctzll(row[w]);
        rows_.emplace_back(pivot, std::move(row));
        return true;
      }
    }
    return false;
  }

private:
  std::vector<std::pair<int, BitRow>> rows_;
};

}  // namespace

std::vector<Ring> sssr(const MolGraph &g) {
  const int target = ring_count(g);
  if (target == 0)
    return {};

  const auto in_ring = ring_bonds(g);
  const int n = g.num_atoms();

  // Neighbor lists restricted to ring bonds, ascending by atom index so the
  // BFS parent choice is deterministic.
  std::vector<std::vector<Neighbor>> adj(n);
  for (int b = 0; b < g.num_bonds(); ++b) {
    if (!in_ring[b])
      continue;
    adj[g.bond(b).begin].push_back({ g.bond(b).end, b });
    adj[g.bond(b).end].push_back({ g.bond(b).begin, b });
  }
  for (auto &list: adj)
    std::sort(list.begin(), list.end(),
              [](const Neighbor &x, const Neighbor &y) {
                return x.atom < y.atom;
              });

  std::set<std::vector<int>> seen;  // keyed by sorted bond list
  std::vector<Candidate> candidates;
  std::vector<int> dist(n), parent_atom(n), parent_bond(n);

  for (int root = 0; root < n; ++root) {
    if (adj[root].empty())
      continue;
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent_atom.begin(), parent_atom.end(), -1);
    std::fill(parent_bond.begin(), parent_bond.end(), -1);
    std::queue<int> queue;
    dist[root] = 0;
    queue.push(root);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (const auto &nb: adj[u]) {
        if (dist[nb.atom] < 0) {
          dist[nb.atom] = dist[u] + 1;
          parent_atom[nb.atom] = u;
          parent_bond[nb.atom] = nb.bond;
          queue.push(nb.atom);
        }
      }
    }

    auto path_to_root = [&](int v) {
      std::vector<int> atoms;
      for (int x = v; x >= 0; x = parent_atom[x])
        atoms.push_back(x);
      return atoms;  // v ... root
    };

    for (int b = 0; b < g.num_bonds(); ++b) {
      if (!in_ring[b])
        continue;
      const int u = g.bond(b).begin;
      const int v = g.bond(b).end;
      if (dist[u] < 0 || dist[v] < 0)
        continue;
      if (parent_bond[u] == b || parent_bond[v] == b)
        continue;
      auto pu = path_to_root(u);
      auto pv = path_to_root(v);
      // Paths may only meet at the root.
      std::vector<int> su(pu.begin(), pu.end() - 1);
      std::vector<int> sv(pv.begin(), pv.end() - 1);
      std::sort(su.begin(), su.end());
      std::sort(sv.begin(), sv.end());
      std::vector<int> common;
      std::set_intersection(su.begin(), su.end(), sv.begin(), sv.end(),
                            std::back_inserter(common));
      if (!common.empty())
        continue;

      Candidate c;
      // root -> ... -> u, then v -> ... -> (just before root).
      c.atoms.assign(pu.rbegin(), pu.rend());
      c.atoms.insert(c.atoms.end(), pv.begin(), pv.end() - 1);
      for (std::size_t i = 0; i < c.atoms.size(); ++i) {
        const int a = c.atoms[i];
        const int z = c.atoms[(i + 1) % c.atoms.size()];
        c.bonds.push_back(*g.bond_between(a, z));
      }
      std::vector<int> key = c.bonds;
      std::sort(key.begin(), key.end());
      if (!seen.insert(key).second)
        continue;
      c.sorted_atoms = c.atoms;
      std::sort(c.sorted_atoms.begin(), c.sorted_atoms.end());
      c.row = bond_row(c.bonds, g.num_bonds());
      candidates.push_back(std::move(c));
    }
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate &x, const Candidate &y) {
              if (x.atoms.size() != y.atoms.size())
                return x.atoms.size() < y.atoms.size();
              return x.sorted_atoms < y.sorted_atoms;
            });

  std::vector<Ring> rings;
  CycleSpaceBasis basis;
  for (auto &c: candidates) {
    if (static_cast<int>(rings.size()) == target)
      break;
    if (basis.add_if_independent(c.row))
      rings.push_back({ std::move(c.atoms), std::move(c.bonds) });
  }
  return rings;
}

std::vector<RingSystem> ring_systems(const MolGraph &g,
                                     const std::vector<Ring> &rings) {
  const int r = static_cast<int>(rings.size());
  std::vector<int> group(r);
  std::iota(group.begin(), group.end(), 0);
  auto find = [&](int x) {
    while (group[x] != x)
      x = group[x] = group[group[x]];
    return x;
  };
  std::vector<std::vector<int>> rings_of_bond(g.num_bonds());
  for (int i = 0; i < r; ++i)
    for (int b: rings[i].bonds)
      rings_of_bond[b].push_back(i);
  for (const auto &list: rings_of_bond)
    for (std::size_t k = 1; k < list.size(); ++k)
      group[find(list[k])] = find(list[0]);

  std::vector<int> dense(r, -1);
  int next = 0;
  std::vector<RingSystem> out;
  for (int i = 0; i < r; ++i) {
    const int root = find(i);
    if (dense[root] < 0)
      dense[root] = next++;
    RingSystem sys;
    sys.atom_set = rings[i].atoms;
    std::sort(sys.atom_set.begin(), sys.atom_set.end());
    sys.fused_group = dense[root];
    out.push_back(std::move(sys));
  }
  return out;
}

}  // namespace scafnav
