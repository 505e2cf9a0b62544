#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scafnav/index.h"

namespace scafnav {

struct ConeCaps {
  int max_depth = 6;
  std::size_t max_size = 100'000;
};

struct ConeResult {
  Scaffold root;
  std::vector<Scaffold> members;  // BFS order, root excluded
  bool truncated = false;
};

// Scaffolds reachable from `key` along successor edges.
ConeResult upper_cone(const HypergraphIndex &idx, std::string_view key,
                      const ConeCaps &caps = {});
// Scaffolds reachable from `key` along predecessor edges.
ConeResult lower_cone_indexed(const HypergraphIndex &idx, std::string_view key,
                              const ConeCaps &caps = {});

// Scaffolds that have both s1 and s2 as immediate predecessors, by key.
std::vector<Scaffold> union_scaffolds(const HypergraphIndex &idx,
                                      std::string_view s1,
                                      std::string_view s2);

// A hit is either a molecule or a scaffold; both are projected through
// scaffold_key. Ringless hits and scaffolds absent from the index fail
// individually.
struct HitResolution {
  std::string input;
  std::optional<Scaffold> scaffold;
  std::string error;  // error code name when unresolved
  std::string message;
};

HitResolution resolve_hit(const HypergraphIndex &idx, std::string_view hit);

struct FbddResult {
  std::vector<HitResolution> hits;
  std::vector<int> subset;           // indices into hits that were used
  std::vector<Scaffold> scaffolds;   // intersection of upper cones, by key
  bool truncated = false;
};

// Intersection of the upper cones of hits[i] for i in `subset` (all hits
// when omitted). Unresolved hits are reported and skipped. Throws
// Error(kEmptySubset) when no resolved hit remains and Error(kBadRequest)
// for an out-of-range index.
FbddResult fbdd_intersection(const HypergraphIndex &idx,
                             const std::vector<std::string> &hits,
                             const std::optional<std::vector<int>> &subset = {},
                             const ConeCaps &caps = {});

inline constexpr std::size_t kMaxFbddHits = 12;

struct FbddSubset {
  std::vector<int> subset;  // indices into the hit list, ascending
  std::vector<Scaffold> scaffolds;
};

struct FbddSearchResult {
  std::vector<HitResolution> hits;
  std::vector<FbddSubset> subsets;
  bool truncated = false;
};

// All inclusion-maximal subsets of the resolved, deduplicated hits whose
// cone intersection is non-empty and whose size is at least
// `min_subset_size`. Ordered by size descending, then by hit keys. Throws
// Error(kTooManyHits) for more than kMaxFbddHits hits.
FbddSearchResult fbdd_search(const HypergraphIndex &idx,
                             const std::vector<std::string> &hits,
                             int min_subset_size = 1,
                             const ConeCaps &caps = {});

}  // namespace scafnav
