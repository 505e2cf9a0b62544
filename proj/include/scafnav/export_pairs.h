#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "scafnav/index.h"

namespace scafnav {

enum class PairKind { kScaffold, kSuccessor, kPredecessor };

// "scaffold", "successor" or "predecessor". Throws Error(kUnknownKind).
PairKind parse_pair_kind(std::string_view name);
std::string_view pair_kind_name(PairKind kind);

struct TrainingPair {
  std::string source;
  std::string target;
  PairKind kind = PairKind::kScaffold;

  bool operator==(const TrainingPair &) const = default;
};

struct ExportOptions {
  PairKind kind = PairKind::kScaffold;
  int augment = 1;
  std::uint64_t seed = 0;
  // Share of scaffold classes whose pairs go to the holdout list, chosen by
  // a seeded hash of the class key.
  double holdout_fraction = 0.0;
  int workers = 0;
};

struct ExportResult {
  std::vector<TrainingPair> pairs;
  std::vector<TrainingPair> holdout;
};

// kScaffold: each molecule with its scaffold (S0 targets are empty).
// kSuccessor: each edge, predecessor as source. kPredecessor: the successor
// pairs with columns swapped. Every item is rendered `augment` times; both
// sides are randomized SMILES seeded per item and rendering.
ExportResult export_pairs(const HypergraphIndex &idx,
                          const ExportOptions &options);

void write_pairs(std::ostream &out, const std::vector<TrainingPair> &pairs);
// Parses `source\ttarget\tkind` lines. Throws Error(kIoError).
std::vector<TrainingPair> read_pairs(std::istream &in);

struct PairCheck {
  std::int64_t lines = 0;
  std::int64_t verified = 0;
  std::vector<std::string> failures;  // first few offending lines
};

// Re-derives each pair's relation from the index: scaffold_key equality for
// kScaffold, edge membership for the graph kinds.
PairCheck verify_pairs(const HypergraphIndex &idx,
                       const std::vector<TrainingPair> &pairs);

}  // namespace scafnav
