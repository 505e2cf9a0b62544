#pragma once

#include <string>
#include <string_view>

#include "scafnav/molgraph.h"

namespace scafnav {

// Identity of a scaffold class. The ringless class S0 has the empty key.
struct Scaffold {
  std::string key;
  int ring_count = 0;
  bool is_virtual = false;

  bool is_ringless() const { return key.empty(); }
  bool operator==(const Scaffold &) const = default;
};

// Murcko framework of a connected graph:
//   1. repeatedly delete atoms of degree <= 1 until none remain, leaving
//      rings and the linkers between them;
//   2. re-attach each deleted atom that was bonded to a kept atom by a
//      double or triple bond.
// Atoms that lose neighbors are capped as in capped_subgraph().
// Acyclic input yields the empty graph. Throws Error(kMultiComponentInput)
// when `g` has more than one component.
MolGraph murcko_scaffold(const MolGraph &g);

// parse -> largest component -> murcko_scaffold -> canonical SMILES.
Scaffold scaffold_key(std::string_view smiles);
// Same pipeline from an already parsed single-component graph.
Scaffold scaffold_of(const MolGraph &g);

inline int hierarchy_level(const Scaffold &s) { return s.ring_count; }

}  // namespace scafnav
