#include "scafnav/algebra.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <iterator>
#include <map>

#include "scafnav/error.h"

namespace scafnav {
namespace {

enum class Direction { kUp, kDown };

struct IdCone {
  std::vector<int> ids;  // BFS order
  bool truncated = false;
};

IdCone cone_ids(const HypergraphIndex &idx, int root, Direction dir,
                const ConeCaps &caps) {
  IdCone out;
  std::vector<char> seen(idx.scaffolds().size(), 0);
  seen[root] = 1;
  std::vector<int> frontier { root };
  for (int depth = 0; !frontier.empty(); ++depth) {
    std::vector<int> next;
    for (int id: frontier) {
      const auto adj = dir == Direction::kUp ? idx.successor_ids(id)
                                             : idx.predecessor_ids(id);
      for (int n: adj) {
        if (seen[n])
          continue;
        if (depth >= caps.max_depth || out.ids.size() >= caps.max_size) {
          out.truncated = true;
          return out;
        }
        seen[n] = 1;
        out.ids.push_back(n);
        next.push_back(n);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

ConeResult to_cone(const HypergraphIndex &idx, int root, const IdCone &c) {
  ConeResult out;
  out.root = idx.scaffold(root).scaffold;
  out.truncated = c.truncated;
  out.members.reserve(c.ids.size());
  for (int id: c.ids)
    out.members.push_back(idx.scaffold(id).scaffold);
  return out;
}

std::vector<Scaffold> sorted_by_key(const HypergraphIndex &idx,
                                    const std::vector<int> &ids) {
  std::vector<Scaffold> out;
  out.reserve(ids.size());
  for (int id: ids)
    out.push_back(idx.scaffold(id).scaffold);
  std::sort(out.begin(), out.end(), [](const Scaffold &a, const Scaffold &b) {
    return a.key < b.key;
  });
  return out;
}

std::vector<int> sorted_ids(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<int> intersect(const std::vector<int> &a,
                           const std::vector<int> &b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace

ConeResult upper_cone(const HypergraphIndex &idx, std::string_view key,
                      const ConeCaps &caps) {
  const int root = idx.require(key);
  return to_cone(idx, root, cone_ids(idx, root, Direction::kUp, caps));
}

ConeResult lower_cone_indexed(const HypergraphIndex &idx, std::string_view key,
                              const ConeCaps &caps) {
  const int root = idx.require(key);
  return to_cone(idx, root, cone_ids(idx, root, Direction::kDown, caps));
}

std::vector<Scaffold> union_scaffolds(const HypergraphIndex &idx,
                                      std::string_view s1,
                                      std::string_view s2) {
  const auto a = idx.successor_ids(idx.require(s1));
  const auto b = idx.successor_ids(idx.require(s2));
  return sorted_by_key(idx, intersect(sorted_ids({ a.begin(), a.end() }),
                                      sorted_ids({ b.begin(), b.end() })));
}

HitResolution resolve_hit(const HypergraphIndex &idx, std::string_view hit) {
  HitResolution r;
  r.input = std::string(hit);
  try {
    Scaffold s = scaffold_key(hit);
    if (s.is_ringless())
      throw Error(ErrorCode::kBadRequest,
                  "hit '" + r.input + "' has no rings and no cone");
    s = idx.scaffold(idx.require(s.key)).scaffold;
    r.scaffold = std::move(s);
  } catch (const Error &e) {
    r.error = std::string(error_code_name(e.code()));
    r.message = e.detail();
  }
  return r;
}

FbddResult fbdd_intersection(const HypergraphIndex &idx,
                             const std::vector<std::string> &hits,
                             const std::optional<std::vector<int>> &subset,
                             const ConeCaps &caps) {
  FbddResult out;
  std::vector<int> chosen;
  if (subset) {
    for (int i: *subset) {
      if (i < 0 || i >= static_cast<int>(hits.size()))
        throw Error(ErrorCode::kBadRequest,
                    "subset index " + std::to_string(i) + " out of range");
      chosen.push_back(i);
    }
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  } else {
    for (int i = 0; i < static_cast<int>(hits.size()); ++i)
      chosen.push_back(i);
  }
  for (const auto &h: hits)
    out.hits.push_back(resolve_hit(idx, h));

  std::optional<std::vector<int>> acc;
  for (int i: chosen) {
    const auto &r = out.hits[i];
    if (!r.scaffold)
      continue;
    out.subset.push_back(i);
    const int root = idx.require(r.scaffold->key);
    const IdCone c = cone_ids(idx, root, Direction::kUp, caps);
    out.truncated = out.truncated || c.truncated;
    auto ids = sorted_ids(c.ids);
    acc = acc ? intersect(*acc, ids) : std::move(ids);
  }
  if (!acc)
    throw Error(ErrorCode::kEmptySubset, "no resolvable hit in the subset");
  out.scaffolds = sorted_by_key(idx, *acc);
  return out;
}

FbddSearchResult fbdd_search(const HypergraphIndex &idx,
                             const std::vector<std::string> &hits,
                             int min_subset_size, const ConeCaps &caps) {
  if (hits.size() > kMaxFbddHits)
    throw Error(ErrorCode::kTooManyHits,
                std::to_string(hits.size()) + " hits, at most " +
                    std::to_string(kMaxFbddHits) + " allowed");
  FbddSearchResult out;
  for (const auto &h: hits)
    out.hits.push_back(resolve_hit(idx, h));

  // One representative hit per distinct scaffold, keyed for ordering.
  std::map<std::string, int> first_by_key;
  for (int i = 0; i < static_cast<int>(out.hits.size()); ++i)
    if (out.hits[i].scaffold)
      first_by_key.try_emplace(out.hits[i].scaffold->key, i);
  std::vector<int> reps;
  std::vector<std::vector<int>> cones;
  for (const auto &[key, i]: first_by_key) {
    reps.push_back(i);
    const IdCone c = cone_ids(idx, idx.require(key), Direction::kUp, caps);
    out.truncated = out.truncated || c.truncated;
    cones.push_back(sorted_ids(c.ids));
  }

  const int m = static_cast<int>(reps.size());
  const std::uint32_t full = 1u << m;
  std::vector<std::vector<int>> meet(full);
  std::vector<char> nonempty(full, 0);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const int low = __builtin_ctz(mask);
    const std::uint32_t rest = mask & (mask - 1);
    meet[mask] = rest == 0 ? cones[low] : intersect(meet[rest], cones[low]);
    nonempty[mask] = !meet[mask].empty();
  }

  struct Found {
    std::uint32_t mask;
    std::vector<std::string> keys;
  };
  std::vector<Found> found;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    if (!nonempty[mask] || std::popcount(mask) < min_subset_size)
      continue;
    bool maximal = true;
    for (int j = 0; j < m && maximal; ++j)
      if (!(mask & (1u << j)) && nonempty[mask | (1u << j)])
        maximal = false;
    if (!maximal)
      continue;
    Found f { mask, {} };
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j))
        f.keys.push_back(out.hits[reps[j]].scaffold->key);
    found.push_back(std::move(f));
  }
  std::sort(found.begin(), found.end(), [](const Found &a, const Found &b) {
    if (a.keys.size() != b.keys.size())
      return a.keys.size() > b.keys.size();
    return a.keys < b.keys;
  });
  for (const auto &f: found) {
    FbddSubset s;
    for (int j = 0; j < m; ++j)
      if (f.mask & (1u << j))
        s.subset.push_back(reps[j]);
    std::sort(s.subset.begin(), s.subset.end());
    s.scaffolds = sorted_by_key(idx, meet[f.mask]);
    out.subsets.push_back(std::move(s));
  }
  return out;
}

}  // namespace scafnav
