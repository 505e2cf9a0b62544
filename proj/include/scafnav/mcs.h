#pragma once

#include <cstdint>
#include <vector>

#include "scafnav/molgraph.h"
#include "scafnav/scaffold.h"

namespace scafnav {

inline constexpr std::int64_t kDefaultMcsBudget = 1'000'000;

struct McsResult {
  // Connected common subgraph (taken from the first input), or empty. Atoms
  // keep element, aromaticity and charge; hydrogen counts follow from the
  // common bonds alone.
  MolGraph common;
  // common atom i corresponds to first-input atom map_a[i] and second-input
  // atom map_b[i].
  std::vector<int> map_a;
  std::vector<int> map_b;
  // False when the expansion budget cut the search short.
  bool exhausted = true;
};

// Maximum common connected edge subgraph under atoms_compatible() and equal
// bond orders. Maximizes the bond count; among equally large results the
// lexicographically smallest canonical SMILES wins, then the smallest
// (map_a, map_b) sequence. With no bond in common the result is a single
// compatible atom, or empty when no atom pair is compatible.
McsResult maximum_common_substructure(const MolGraph &a, const MolGraph &b,
                                      std::int64_t budget = kDefaultMcsBudget);

// The scaffold algebra's intersection: MCS of two scaffold graphs. The
// result is a raw graph and need not itself be a scaffold.
McsResult intersection(const Scaffold &s1, const Scaffold &s2,
                       std::int64_t budget = kDefaultMcsBudget);

}  // namespace scafnav
