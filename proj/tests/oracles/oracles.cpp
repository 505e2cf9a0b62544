#include "oracles.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

#include "scafnav/fragment.h"

namespace oracle {
namespace {

using scafnav::BondOrder;

bool same_label(const MolGraph &a, int i, const MolGraph &b, int j) {
  const auto &x = a.atom(i);
  const auto &y = b.atom(j);
  return x.element == y.element && x.aromatic == y.aromatic &&
         x.formal_charge == y.formal_charge &&
         a.hydrogen_count(i) == b.hydrogen_count(j) &&
         a.degree(i) == b.degree(j);
}

int order_between(const MolGraph &g, int u, int v) {
  for (const auto &nb: g.neighbors(u))
    if (nb.atom == v)
      return static_cast<int>(g.bond(nb.bond).order);
  return 0;
}

bool connected_mask(const MolGraph &g, std::uint64_t mask) {
  if (mask == 0)
    return false;
  std::vector<int> parent(g.num_atoms());
  for (int i = 0; i < g.num_atoms(); ++i)
    parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  int root = -1;
  for (int b = 0; b < g.num_bonds(); ++b) {
    if (!((mask >> b) & 1U))
      continue;
    parent[find(g.bond(b).begin)] = find(g.bond(b).end);
    root = g.bond(b).begin;
  }
  for (int b = 0; b < g.num_bonds(); ++b)
    if (((mask >> b) & 1U) && find(g.bond(b).begin) != find(root))
      return false;
  return true;
}

// Pattern given as a bond subset of `a`.
bool subset_embeds(const MolGraph &a, std::uint64_t mask, const MolGraph &b) {
  std::vector<int> atoms;
  std::vector<std::pair<int, int>> bonds;
  std::vector<int> local(a.num_atoms(), -1);
  for (int e = 0; e < a.num_bonds(); ++e) {
    if (!((mask >> e) & 1U))
      continue;
    for (int end: { a.bond(e).begin, a.bond(e).end })
      if (local[end] < 0) {
        local[end] = static_cast<int>(atoms.size());
        atoms.push_back(end);
      }
    bonds.emplace_back(a.bond(e).begin, a.bond(e).end);
  }
  std::vector<int> image(a.num_atoms(), -1);
  std::vector<bool> used(b.num_atoms(), false);
  std::function<bool(std::size_t)> place = [&](std::size_t k) {
    if (k == atoms.size())
      return true;
    const int u = atoms[k];
    for (int t = 0; t < b.num_atoms(); ++t) {
      if (used[t] || !scafnav::atoms_compatible(a.atom(u), b.atom(t)))
        continue;
      bool ok = true;
      for (const auto &[x, y]: bonds) {
        const int other = x == u ? y : y == u ? x : -1;
        if (other < 0 || image[other] < 0)
          continue;
        if (order_between(b, t, image[other]) != order_between(a, u, other)) {
          ok = false;
          break;
        }
      }
      if (!ok)
        continue;
      image[u] = t;
      used[t] = true;
      if (place(k + 1))
        return true;
      image[u] = -1;
      used[t] = false;
    }
    return false;
  };
  return place(0);
}

}  // namespace

bool isomorphic(const MolGraph &a, const MolGraph &b) {
  if (a.num_atoms() != b.num_atoms() || a.num_bonds() != b.num_bonds())
    return false;
  const int n = a.num_atoms();
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> place = [&](int u) {
    if (u == n)
      return true;
    for (int t = 0; t < n; ++t) {
      if (used[t] || !same_label(a, u, b, t))
        continue;
      bool ok = true;
      for (int v = 0; v < u && ok; ++v)
        ok = order_between(a, u, v) == order_between(b, t, image[v]);
      if (!ok)
        continue;
      image[u] = t;
      used[t] = true;
      if (place(u + 1))
        return true;
      image[u] = -1;
      used[t] = false;
    }
    return false;
  };
  return place(0);
}

int cycle_space_rank(const MolGraph &g) {
  // Every simple cycle, found as a path from its lowest atom back to it.
  std::set<std::uint64_t> cycles;
  const int n = g.num_atoms();
  std::vector<bool> on_path(n, false);
  std::function<void(int, int, std::uint64_t, int)> walk =
      [&](int start, int u, std::uint64_t bonds, int length) {
        for (const auto &nb: g.neighbors(u)) {
          if ((bonds >> nb.bond) & 1U)
            continue;
          if (nb.atom == start && length >= 2) {
            cycles.insert(bonds | (std::uint64_t { 1 } << nb.bond));
            continue;
          }
          if (nb.atom < start || on_path[nb.atom])
            continue;
          on_path[nb.atom] = true;
          walk(start, nb.atom, bonds | (std::uint64_t { 1 } << nb.bond),
               length + 1);
          on_path[nb.atom] = false;
        }
      };
  for (int s = 0; s < n; ++s) {
    on_path[s] = true;
    walk(s, s, 0, 0);
    on_path[s] = false;
  }
  std::vector<std::uint64_t> basis;
  for (std::uint64_t c: cycles) {
    for (std::uint64_t r: basis)
      c = std::min(c, c ^ r);
    if (c != 0) {
      basis.push_back(c);
      std::sort(basis.rbegin(), basis.rend());
    }
  }
  return static_cast<int>(basis.size());
}

bool embeds(const MolGraph &pattern, const MolGraph &target) {
  const int n = pattern.num_atoms();
  if (n > target.num_atoms())
    return false;
  std::vector<int> image(n, -1);
  std::vector<bool> used(target.num_atoms(), false);
  std::function<bool(int)> place = [&](int u) {
    if (u == n)
      return true;
    for (int t = 0; t < target.num_atoms(); ++t) {
      if (used[t] ||
          !scafnav::atoms_compatible(pattern.atom(u), target.atom(t)))
        continue;
      bool ok = true;
      for (const auto &nb: pattern.neighbors(u)) {
        if (nb.atom >= u)
          continue;
        if (order_between(target, t, image[nb.atom]) !=
            static_cast<int>(pattern.bond(nb.bond).order)) {
          ok = false;
          break;
        }
      }
      if (!ok)
        continue;
      image[u] = t;
      used[t] = true;
      if (place(u + 1))
        return true;
      image[u] = -1;
      used[t] = false;
    }
    return false;
  };
  return place(0);
}

McsSize brute_mcs_by_subsets(const MolGraph &a, const MolGraph &b) {
  const int m = a.num_bonds();
  std::vector<std::vector<std::uint64_t>> by_count(m + 1);
  for (std::uint64_t mask = 1; mask < (std::uint64_t { 1 } << m); ++mask)
    by_count[__builtin_popcountll(mask)].push_back(mask);
  for (int k = m; k >= 1; --k) {
    int best_atoms = -1;
    for (std::uint64_t mask: by_count[k]) {
      if (!connected_mask(a, mask) || !subset_embeds(a, mask, b))
        continue;
      std::set<int> atoms;
      for (int e = 0; e < m; ++e)
        if ((mask >> e) & 1U) {
          atoms.insert(a.bond(e).begin);
          atoms.insert(a.bond(e).end);
        }
      best_atoms = std::max(best_atoms, static_cast<int>(atoms.size()));
    }
    if (best_atoms > 0)
      return { best_atoms, k };
  }
  for (int i = 0; i < a.num_atoms(); ++i)
    for (int j = 0; j < b.num_atoms(); ++j)
      if (scafnav::atoms_compatible(a.atom(i), b.atom(j)))
        return { 1, 0 };
  return { 0, 0 };
}

// Level-wise over connected bond subsets of `a`: every connected k-bond
// subgraph contains a connected (k-1)-bond one, so growing only the
// embeddable sets by one adjacent bond still visits all of them.
McsSize brute_mcs(const MolGraph &a, const MolGraph &b) {
  const int m = a.num_bonds();
  const auto atom_count = [&](std::uint64_t mask) {
    std::set<int> atoms;
    for (int e = 0; e < m; ++e)
      if ((mask >> e) & 1U) {
        atoms.insert(a.bond(e).begin);
        atoms.insert(a.bond(e).end);
      }
    return static_cast<int>(atoms.size());
  };
  std::set<std::uint64_t> level;
  for (int e = 0; e < m; ++e)
    if (subset_embeds(a, std::uint64_t { 1 } << e, b))
      level.insert(std::uint64_t { 1 } << e);
  McsSize best;
  for (int k = 1; !level.empty(); ++k) {
    best = { 0, k };
    for (std::uint64_t mask: level)
      best.atoms = std::max(best.atoms, atom_count(mask));
    std::set<std::uint64_t> next;
    for (std::uint64_t mask: level)
      for (int e = 0; e < m; ++e) {
        const std::uint64_t grown = mask | (std::uint64_t { 1 } << e);
        if (grown == mask || next.count(grown) || !connected_mask(a, grown))
          continue;
        if (subset_embeds(a, grown, b))
          next.insert(grown);
      }
    level = std::move(next);
  }
  if (best.bonds > 0)
    return best;
  for (int i = 0; i < a.num_atoms(); ++i)
    for (int j = 0; j < b.num_atoms(); ++j)
      if (scafnav::atoms_compatible(a.atom(i), b.atom(j)))
        return { 1, 0 };
  return { 0, 0 };
}

std::vector<std::pair<std::int64_t, std::int64_t>>
coverage(const std::vector<std::string> &scaffold_of_molecule) {
  std::map<std::string, std::int64_t> count;
  for (const auto &key: scaffold_of_molecule)
    ++count[key];
  std::vector<std::pair<std::int64_t, std::string>> rows;
  for (const auto &[key, c]: count)
    rows.emplace_back(-c, key);
  std::sort(rows.begin(), rows.end());
  std::vector<std::pair<std::int64_t, std::int64_t>> out { { 0, 0 } };
  std::int64_t covered = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    covered += -rows[i].first;
    out.emplace_back(static_cast<std::int64_t>(i + 1), covered);
  }
  return out;
}

std::pair<long double, long double>
regression(const std::vector<std::pair<double, double>> &points) {
  long double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto &[x, y]: points) {
    const long double lx = x, ly = y;
    n += 1;
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const long double cov = n * sxy - sx * sy;
  const long double vx = n * sxx - sx * sx;
  const long double vy = n * syy - sy * sy;
  const long double slope = cov / vx;
  const long double r2 = vy == 0 ? 1.0L : (cov * cov) / (vx * vy);
  return { slope, r2 };
}

void kekulize_orphans(MolGraph &g) {
  auto aromatic_path = [&](int skip, int from, int to) {
    std::vector<bool> seen(g.num_atoms(), false);
    std::queue<int> queue;
    queue.push(from);
    seen[from] = true;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      if (u == to)
        return true;
      for (const auto &nb: g.neighbors(u)) {
        if (nb.bond == skip || seen[nb.atom] ||
            g.bond(nb.bond).order != BondOrder::kAromatic)
          continue;
        seen[nb.atom] = true;
        queue.push(nb.atom);
      }
    }
    return false;
  };
  std::vector<int> orphans;
  std::vector<bool> busy(g.num_atoms(), false);
  for (int e = 0; e < g.num_bonds(); ++e) {
    const auto &bond = g.bond(e);
    if (bond.order == BondOrder::kDouble) {
      busy[bond.begin] = busy[bond.end] = true;
    } else if (bond.order == BondOrder::kAromatic) {
      if (aromatic_path(e, bond.begin, bond.end))
        busy[bond.begin] = busy[bond.end] = true;
      else
        orphans.push_back(e);
    }
  }
  for (int e: orphans) {
    auto &bond = g.bond(e);
    if (!busy[bond.begin] && !busy[bond.end]) {
      bond.order = BondOrder::kDouble;
      busy[bond.begin] = busy[bond.end] = true;
    } else {
      bond.order = BondOrder::kSingle;
    }
  }
  for (int i = 0; i < g.num_atoms(); ++i) {
    auto &atom = g.atom(i);
    if (!atom.aromatic || g.has_aromatic_bond(i))
      continue;
    atom.aromatic = false;
    if (atom.formal_charge == 0)
      atom.explicit_h.reset();
  }
}

std::vector<int> reachable(int from,
                           const std::vector<std::pair<int, int>> &edges,
                           bool forward) {
  std::map<int, std::vector<int>> next;
  for (const auto &[p, s]: edges)
    next[forward ? p : s].push_back(forward ? s : p);
  std::set<int> seen;
  std::vector<int> stack { from };
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v: next[u])
      if (seen.insert(v).second)
        stack.push_back(v);
  }
  return { seen.begin(), seen.end() };
}

}  // namespace oracle
