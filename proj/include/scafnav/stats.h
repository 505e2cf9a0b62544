#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scafnav/index.h"

namespace scafnav {

// Memberless S0 is a reserved row, not a class; all statistics skip it.

using SizeHistogram = std::map<std::int64_t, std::int64_t>;

struct CoveragePoint {
  std::int64_t classes = 0;
  std::int64_t molecules = 0;
  double fraction = 0.0;

  bool operator==(const CoveragePoint &) const = default;
};

struct LevelCounts {
  std::int64_t classes = 0;          // classes with members
  std::int64_t virtual_classes = 0;  // fragmentation-only scaffolds
  std::int64_t molecules = 0;

  bool operator==(const LevelCounts &) const = default;
};

struct TailFit {
  double slope = 0.0;
  double r2 = 0.0;
  std::int64_t cutoff = 0;
  int points = 0;
};

struct DegreeEntry {
  Scaffold scaffold;
  int out_degree = 0;
  std::int64_t class_size = 0;
};

struct LevelDegreeReport {
  int level = 0;
  std::vector<DegreeEntry> top;
  std::vector<DegreeEntry> min_degree_sample;
};

struct DegreeReport {
  std::map<int, std::int64_t> histogram;  // out-degree -> scaffold count
  std::vector<LevelDegreeReport> levels;  // hierarchy levels 1 to 3
};

inline constexpr std::int64_t kDefaultTailCutoff = 10;
inline constexpr std::size_t kMaxCoveragePoints = 1000;

// Size -> number of classes with that many members.
SizeHistogram class_size_histogram(const HypergraphIndex &idx);

// Classes by member count descending (ties by key), accumulated. Starts at
// (0, 0, 0) and ends at (classes, molecules, 1).
std::vector<CoveragePoint> coverage_curve(const HypergraphIndex &idx);
// The same curve rebuilt from the class-size histogram alone.
std::vector<CoveragePoint> coverage_from_histogram(const SizeHistogram &hist);
// Keeps at most `max_points`, always including both endpoints.
std::vector<CoveragePoint> downsample(const std::vector<CoveragePoint> &curve,
                                      std::size_t max_points =
                                          kMaxCoveragePoints);

std::map<int, LevelCounts> hierarchy_histogram(const HypergraphIndex &idx);

// Out-degree over every scaffold except S0; top-k and a seeded sample of
// minimal-degree scaffolds for levels 1 to 3.
DegreeReport degree_distribution(const HypergraphIndex &idx, int top_k,
                                 std::uint64_t seed);

// Least-squares slope of log(count) against log(size) over sizes >= cutoff.
// Throws Error(kInsufficientPoints) with fewer than three such sizes.
TailFit fit_tail_slope(const SizeHistogram &hist,
                       std::int64_t cutoff = kDefaultTailCutoff);

struct StatsOptions {
  std::int64_t tail_cutoff = kDefaultTailCutoff;
  int top_k = 10;
  std::uint64_t seed = 0;
};

struct CorpusStats {
  std::int64_t molecules = 0;
  std::int64_t classes = 0;
  std::int64_t virtual_classes = 0;
  std::int64_t edges = 0;
  SizeHistogram class_size_hist;
  std::vector<CoveragePoint> coverage;  // full resolution
  std::map<int, LevelCounts> hierarchy;
  DegreeReport degree;
  std::optional<TailFit> tail_fit;
  StatsOptions options;
};

CorpusStats compute_stats(const HypergraphIndex &idx,
                          const StatsOptions &options = {});
std::string stats_json(const CorpusStats &stats);
std::string stats_tsv(const CorpusStats &stats);

}  // namespace scafnav
