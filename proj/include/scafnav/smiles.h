#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "scafnav/molgraph.h"

namespace scafnav {

// Parses the OpenSMILES organic subset plus bracket atoms (H, Si, Se, As
// and the organic elements). Stereo markers and isotopes are recorded but
// carry no meaning downstream. Implicit bonds between aromatic atoms that
// do not lie on a ring become single bonds; Kekule six-membered C/N rings
// with alternating bonds are rewritten in aromatic form.
//
// Throws Error with kSyntaxError, kUnclosedRingBond, kUnsupportedElement or
// kValenceError.
MolGraph parse_smiles(std::string_view text);

// Emits SMILES by depth-first traversal. Every component starts at its
// lowest-ranked atom and neighbors are visited in rank order, so the
// output is a function of the graph and the ranking alone. `ranks` must be
// a permutation of [0, num_atoms).
std::string write_smiles(const MolGraph &g, std::span<const int> ranks);

// SMILES from a seeded random atom ranking. Throws Error(kEmptyGraph).
std::string randomize_smiles(const MolGraph &g, std::uint64_t seed);

}  // namespace scafnav
