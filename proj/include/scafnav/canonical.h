#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scafnav/molgraph.h"

namespace scafnav {

// Canonical atom ranking: a permutation of [0, num_atoms) that depends only
// on the isomorphism class of `g` (stereo and isotopes excluded).
//
// Ranks come from partition refinement over (element, degree, charge,
// aromaticity, ring membership, hydrogen count) followed by an
// individualization search over the remaining ties. Among the leaves of
// the search the ranking whose SMILES is lexicographically smallest wins.
std::vector<int> canonical_ranks(const MolGraph &g);

// Canonical SMILES; the empty graph maps to the empty string.
std::string write_canonical(const MolGraph &g);

// Convenience: write_canonical(parse_smiles(text)).
std::string canonicalize(std::string_view text);

// Number of leaves the tie-breaking search may visit before it settles for
// the best leaf seen so far.
inline constexpr int kCanonicalLeafBudget = 4096;

}  // namespace scafnav
