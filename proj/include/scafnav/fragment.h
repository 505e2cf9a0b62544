#pragma once

#include <cstdint>
#include <vector>

#include "scafnav/molgraph.h"
#include "scafnav/scaffold.h"

namespace scafnav {

inline constexpr std::int64_t kDefaultMatchBudget = 1'000'000;

// Parses a scaffold key and checks that it is a canonical Murcko fixpoint.
// Throws Error(kInvalidScaffold) otherwise.
MolGraph scaffold_graph(const Scaffold &s);

// Immediate predecessors of a framework graph. Each SSSR ring is removed in
// turn (atoms and bonds it shares with another SSSR ring stay); acyclic
// debris is dropped, removals that leave more than one cyclic piece are
// skipped, and the remainder is re-pruned with murcko_scaffold. Results
// are deduplicated, sorted by key, and all have ring_count one below the
// input.
std::vector<Scaffold> fragment_graph_once(const MolGraph &framework);

// fragment_graph_once on a scaffold key. Empty for S0 and 1-ring scaffolds.
std::vector<Scaffold> fragment_once(const Scaffold &s);

// Transitive closure of fragment_once, sorted by key, excluding `s` and S0.
std::vector<Scaffold> lower_cone(const Scaffold &s);

// True iff `pattern` embeds injectively into `target` preserving element,
// aromaticity, formal charge and bond orders (subgraph monomorphism).
// Throws Error(kTimeout) when more than `budget` candidate pairs are tried.
bool is_substructure(const MolGraph &pattern, const MolGraph &target,
                     std::int64_t budget = kDefaultMatchBudget);

// Atom compatibility shared by the substructure matcher and MCS.
inline bool atoms_compatible(const Atom &a, const Atom &b) {
  return a.element == b.element && a.aromatic == b.aromatic &&
         a.formal_charge == b.formal_charge;
}

}  // namespace scafnav
