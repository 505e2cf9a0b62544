#include <doctest.h>

#include "oracles.h"
#include "scafnav/canonical.h"
#include "scafnav/fragment.h"
#include "scafnav/mcs.h"
#include "scafnav/scaffold.h"
#include "scafnav/smiles.h"

using namespace scafnav;

namespace {

void check_maps(const McsResult &r, const MolGraph &a, const MolGraph &b) {
  const MolGraph &c = r.common;
  REQUIRE(r.map_a.size() == static_cast<std::size_t>(c.num_atoms()));
  REQUIRE(r.map_b.size() == static_cast<std::size_t>(c.num_atoms()));
  for (int i = 0; i < c.num_atoms(); ++i) {
    CHECK(atoms_compatible(c.atom(i), a.atom(r.map_a[i])));
    CHECK(atoms_compatible(c.atom(i), b.atom(r.map_b[i])));
  }
  for (const auto &bond: c.bonds()) {
    const auto ea = a.bond_between(r.map_a[bond.begin], r.map_a[bond.end]);
    const auto eb = b.bond_between(r.map_b[bond.begin], r.map_b[bond.end]);
    REQUIRE(ea);
    REQUIRE(eb);
    CHECK(a.bond(*ea).order == bond.order);
    CHECK(b.bond(*eb).order == bond.order);
  }
}

}  // namespace

TEST_SUITE("mcs") {

TEST_CASE("identical inputs") {
  const MolGraph s = parse_smiles("O=S(=O)(c1ccccc1)N1CCCCCC1");
  const McsResult r = maximum_common_substructure(s, s);
  CHECK(r.exhausted);
  CHECK(oracle::isomorphic(r.common, s));
  check_maps(r, s, s);
}

TEST_CASE("benzene and pyridine share a five atom path") {
  const MolGraph a = parse_smiles("c1ccccc1"), b = parse_smiles("c1ccncc1");
  const McsResult r = maximum_common_substructure(a, b);
  CHECK(r.exhausted);
  CHECK(r.common.num_atoms() == 5);
  CHECK(r.common.num_bonds() == 4);
  for (const auto &atom: r.common.atoms()) {
    CHECK(atom.element == element::kC);
    CHECK(atom.aromatic);
  }
  check_maps(r, a, b);
}

TEST_CASE("benzene and azepane share nothing") {
  const McsResult r = intersection(scaffold_key("c1ccccc1"),
                                   scaffold_key("C1CCCNCC1"));
  CHECK(r.common.empty());
  CHECK(r.exhausted);
}

TEST_CASE("single atom fallback") {
  const MolGraph a = parse_smiles("C1CCOC1"), b = parse_smiles("c1ccoc1");
  const McsResult r = maximum_common_substructure(a, b);
  CHECK(r.common.num_bonds() == 0);
  CHECK(r.common.num_atoms() == 0);

  const MolGraph c = parse_smiles("C1CCCCC1"), d = parse_smiles("c1ccccc1C");
  const McsResult r2 = maximum_common_substructure(c, d);
  CHECK(r2.common.num_atoms() == 1);
  CHECK(r2.common.num_bonds() == 0);
}

TEST_CASE("budget exhaustion is flagged") {
  const MolGraph a = parse_smiles("C1CCC2CCCCC2C1CC1CCCCC1CCC1CCCCC1");
  const MolGraph b = parse_smiles("C1CCCCC1CCC1CCCCC1CC1CCC2CCCCC2C1");
  const McsResult r = maximum_common_substructure(a, b, 10);
  CHECK_FALSE(r.exhausted);
  check_maps(r, a, b);
}

TEST_CASE("agrees with brute force on small pairs") {
  const char *inputs[] = { "c1ccccc1", "c1ccncc1", "C1CCNCC1", "C1CCCCC1",
                           "c1ccc(cc1)C1CC1", "C1CC1CC1CC1", "O=C1CCCN1",
                           "c1ccc2ccccc2c1" };
  for (const char *x: inputs)
    for (const char *y: inputs) {
      const MolGraph a = parse_smiles(x), b = parse_smiles(y);
      const McsResult r = maximum_common_substructure(a, b);
      const oracle::McsSize want = oracle::brute_mcs(a, b);
      REQUIRE(r.exhausted);
      CHECK_MESSAGE(r.common.num_bonds() == want.bonds, x << " vs " << y);
      if (want.bonds == 0)
        CHECK(r.common.num_atoms() == want.atoms);
    }
}

TEST_CASE("level-wise oracle matches full subset enumeration") {
  const char *inputs[] = { "c1ccccc1", "c1ccncc1", "C1CCNCC1", "O=C1CCCN1",
                           "c1ccc(cc1)C1CC1", "C1CC2CCC1CC2",
                           "O=S(=O)(c1ccccc1)N1CCCCCC1", "c1ccc2[nH]ccc2c1" };
  for (const char *x: inputs)
    for (const char *y: inputs) {
      const MolGraph a = parse_smiles(x), b = parse_smiles(y);
      const oracle::McsSize fast = oracle::brute_mcs(a, b);
      const oracle::McsSize full = oracle::brute_mcs_by_subsets(a, b);
      CHECK_MESSAGE(fast.bonds == full.bonds, x << " vs " << y);
      CHECK_MESSAGE(fast.atoms == full.atoms, x << " vs " << y);
    }
}

}  // TEST_SUITE
