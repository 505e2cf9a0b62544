#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace scafnav::corpus {

struct CorpusOptions {
  std::int64_t count = 10'000;
  std::uint64_t seed = 1;
  // Adds comments, blank lines, salts, re-rendered duplicates and broken
  // records the way real .smi dumps have them.
  bool noise = true;
};

// Public-record structures that tests refer to by name.
inline constexpr const char *kPenicillinG =
    "CC1([C@@H](N2[C@H](S1)[C@@H](C2=O)NC(=O)CC3=CC=CC=C3)C(=O)O)C";
inline constexpr const char *kPiperacillin =
    "CCN1CCN(C(=O)C1=O)C(=O)N[C@H](C2=CC=CC=C2)C(=O)N[C@H]3[C@@H]4N(C3=O)"
    "[C@H](C(S4)(C)C)C(=O)O";

struct NamedMolecule {
  const char *name;
  const char *smiles;
};
const std::vector<NamedMolecule> &known_drugs();

// One synthetic drug-like molecule: ring blocks joined by linkers, with side
// chains, drawn with Zipf-like weights so class sizes are heavy tailed.
std::string random_molecule(std::uint64_t seed, int max_rings = 5);

// `SMILES<TAB>id` lines, known drugs first.
void write_corpus(std::ostream &out, const CorpusOptions &options);
std::vector<std::string> corpus_lines(const CorpusOptions &options);

}  // namespace scafnav::corpus
