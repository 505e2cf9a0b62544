#include <doctest.h>

#include <algorithm>
#include <set>

#include "scafnav/algebra.h"
#include "scafnav/canonical.h"
#include "scafnav/error.h"
#include "scafnav/fragment.h"
#include "support.h"

using namespace scafnav;

namespace {

const char *kSulfonylAzepane = "O=S(=O)(c1ccccc1)N1CCCCCC1";
const char *kBiphenylEther = "c1ccc(COc2ccccc2)cc1";

std::set<std::string> keys(const std::vector<Scaffold> &v) {
  std::set<std::string> out;
  for (const auto &s: v)
    out.insert(s.key);
  return out;
}

HypergraphIndex sulfonamide_index() {
  return testing::build({ kSulfonylAzepane, kBiphenylEther, "Cc1ccccc1",
                          "C1CCCNCC1", "c1ccncc1CC1CCNCC1",
                          "O=S(=O)(c1ccccc1)N1CCCCCC1c1ccncc1" });
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("upper cone examples") {
  const auto idx = testing::build({ kBiphenylEther });
  const auto ether = canonicalize(kBiphenylEther);
  const ConeResult up = upper_cone(idx, "c1ccccc1");
  CHECK(keys(up.members) == std::set<std::string> { ether });
  CHECK_FALSE(up.truncated);
  CHECK(upper_cone(idx, ether).members.empty());
  CHECK(lower_cone_indexed(idx, "c1ccccc1").members.empty());
}

TEST_CASE("lower cone matches the fragmentation closure") {
  const Scaffold three = scaffold_key("c1ccc(cc1)Cc1ccc(cc1)OC1CCNCC1");
  const auto idx = testing::build({ three.key });
  const ConeResult down = lower_cone_indexed(idx, three.key);
  CHECK(keys(down.members) == keys(lower_cone(three)));
  std::size_t below = idx.level(1).size() + idx.level(2).size();
  CHECK(down.members.size() <= below);
}

TEST_CASE("cone caps truncate") {
  const Scaffold three = scaffold_key("c1ccc(cc1)Cc1ccc(cc1)OC1CCNCC1");
  const auto idx = testing::build({ three.key });
  const ConeResult shallow = lower_cone_indexed(idx, three.key, { 1, 100 });
  CHECK(shallow.truncated);
  for (const auto &s: shallow.members)
    CHECK(s.ring_count == 2);
  const ConeResult small = lower_cone_indexed(idx, three.key, { 6, 1 });
  CHECK(small.truncated);
  CHECK(small.members.size() == 1);
}

TEST_CASE("union examples") {
  const auto idx = sulfonamide_index();
  const auto azepane = canonicalize("C1CCCNCC1");
  const auto both = keys(union_scaffolds(idx, "c1ccccc1", azepane));
  CHECK(both.count(canonicalize(kSulfonylAzepane)));
  CHECK(union_scaffolds(idx, azepane, "c1ccccc1") ==
        union_scaffolds(idx, "c1ccccc1", azepane));
  CHECK(union_scaffolds(idx, "c1ccccc1", "c1ccccc1") ==
        successors(idx, "c1ccccc1"));
  const auto pyridine = canonicalize("c1ccncc1");
  const auto ether = canonicalize(kBiphenylEther);
  CHECK(union_scaffolds(idx, ether, pyridine).empty());
}

TEST_CASE("fbdd single hit is its upper cone") {
  const auto idx = sulfonamide_index();
  const FbddResult r = fbdd_intersection(idx, { "Cc1ccccc1" });
  CHECK(keys(r.scaffolds) == keys(upper_cone(idx, "c1ccccc1").members));
  CHECK(r.subset == std::vector<int> { 0 });
}

TEST_CASE("fbdd benzene and azepane") {
  const auto idx = sulfonamide_index();
  const FbddResult r = fbdd_intersection(idx, { "c1ccccc1", "C1CCCNCC1" });
  CHECK(keys(r.scaffolds).count(canonicalize(kSulfonylAzepane)));
}

TEST_CASE("fbdd disjoint cones") {
  const auto idx = testing::build({ kBiphenylEther, "C1CCC(CC1)C1CCNC1" });
  const FbddResult r = fbdd_intersection(idx, { "c1ccccc1", "C1CCCCC1" });
  CHECK(r.scaffolds.empty());

  const FbddSearchResult s = fbdd_search(idx, { "c1ccccc1", "C1CCCCC1" });
  REQUIRE(s.subsets.size() == 2);
  for (const auto &sub: s.subsets)
    CHECK(sub.subset.size() == 1);
}

TEST_CASE("fbdd duplicate hits collapse") {
  const auto idx = sulfonamide_index();
  const FbddSearchResult s = fbdd_search(idx, { "c1ccccc1", "Cc1ccccc1" });
  CHECK(s.subsets.size() == 1);
}

TEST_CASE("fbdd three hits with one intersecting pair") {
  const auto idx = testing::build({ "c1ccc(cc1)C1CCNCC1", "C1CCC(C1)C1CCOC1" });
  const FbddSearchResult s =
      fbdd_search(idx, { "c1ccccc1", "C1CCNCC1", "C1CCCC1" });
  REQUIRE(!s.subsets.empty());
  CHECK(s.subsets[0].subset == std::vector<int> { 0, 1 });
  CHECK(keys(s.subsets[0].scaffolds) ==
        std::set<std::string> { canonicalize("c1ccc(cc1)C1CCNCC1") });
  for (std::size_t i = 1; i < s.subsets.size(); ++i)
    CHECK(s.subsets[i].subset == std::vector<int> { 2 });

  const FbddSearchResult pairs =
      fbdd_search(idx, { "c1ccccc1", "C1CCNCC1", "C1CCCC1" }, 2);
  REQUIRE(pairs.subsets.size() == 1);
  CHECK(pairs.subsets[0].subset == std::vector<int> { 0, 1 });
}

TEST_CASE("fbdd per-hit errors") {
  const auto idx = sulfonamide_index();
  const FbddResult r =
      fbdd_intersection(idx, { "CCO", "C1CCCCCCCCC1", "c1ccccc1", "C1CC" });
  REQUIRE(r.hits.size() == 4);
  CHECK(r.hits[0].error == "BadRequest");
  CHECK(r.hits[1].error == "UnknownScaffold");
  CHECK(r.hits[2].scaffold);
  CHECK_FALSE(r.hits[3].error.empty());
  CHECK(r.subset == std::vector<int> { 2 });

  CHECK_THROWS_AS(fbdd_intersection(idx, { "CCO" }), Error);
  CHECK_THROWS_AS(fbdd_intersection(idx, { "c1ccccc1" }, std::vector<int> { 3 }),
                  Error);
  std::vector<std::string> many(kMaxFbddHits + 1, "c1ccccc1");
  try {
    fbdd_search(idx, many);
    FAIL("expected TooManyHits");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kTooManyHits);
  }
}

}  // TEST_SUITE
