#pragma once

#include <vector>

#include "scafnav/molgraph.h"

namespace scafnav {

// One ring of the smallest set of smallest rings. `atoms` follows the cycle
// and bonds[i] joins atoms[i] with atoms[(i + 1) % size].
struct Ring {
  std::vector<int> atoms;
  std::vector<int> bonds;

  int size() const { return static_cast<int>(atoms.size()); }
};

// Minimum cycle basis from Horton candidates, selected greedily by length
// with ties broken by the sorted atom-index sequence. The result has exactly
// ring_count(g) rings and is deterministic for a given atom numbering.
std::vector<Ring> sssr(const MolGraph &g);

// A ring annotated with the fused group it belongs to. Rings sharing at
// least one bond share a fused_group id.
struct RingSystem {
  std::vector<int> atom_set;  // sorted
  int fused_group = 0;
};

std::vector<RingSystem> ring_systems(const MolGraph &g,
                                     const std::vector<Ring> &rings);

}  // namespace scafnav
