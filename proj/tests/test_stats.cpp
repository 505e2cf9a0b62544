#include <doctest.h>

#include <cmath>
#include <map>

#include <json.hpp>

#include "oracles.h"
#include "scafnav/error.h"
#include "scafnav/stats.h"
#include "support.h"

using namespace scafnav;

namespace {

std::vector<std::string> ringless(int n) {
  std::vector<std::string> out;
  std::string s = "C";
  for (int i = 0; i < n; ++i) {
    s += "C";
    out.push_back(s + "O");
  }
  return out;
}

const std::vector<std::string> kUnique = { "c1ccccc1", "c1ccncc1", "C1CCCCC1",
                                           "C1CCNCC1", "C1CCOC1" };

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("class size histogram") {
  CHECK(class_size_histogram(testing::build(ringless(5))) ==
        SizeHistogram { { 5, 1 } });
  CHECK(class_size_histogram(testing::build(kUnique)) ==
        SizeHistogram { { 1, 5 } });
}

TEST_CASE("coverage examples") {
  const auto flat = coverage_curve(testing::build(ringless(4)));
  REQUIRE(flat.size() == 2);
  CHECK(flat[1].classes == 1);
  CHECK(flat[1].fraction == 1.0);

  const auto diag = coverage_curve(testing::build(kUnique));
  REQUIRE(diag.size() == 6);
  for (std::size_t i = 0; i < diag.size(); ++i) {
    CHECK(diag[i].classes == static_cast<std::int64_t>(i));
    CHECK(diag[i].molecules == static_cast<std::int64_t>(i));
    CHECK(diag[i].fraction == doctest::Approx(i / 5.0));
  }
}

TEST_CASE("downsample keeps endpoints") {
  const auto curve = coverage_curve(testing::desk().index);
  const auto small = downsample(curve, 10);
  CHECK(small.size() <= 10);
  CHECK(small.front() == curve.front());
  CHECK(small.back() == curve.back());
  CHECK(downsample(curve, curve.size() + 5) == curve);
}

TEST_CASE("hierarchy examples") {
  const auto r = hierarchy_histogram(testing::build(ringless(3)));
  REQUIRE(r.count(0));
  CHECK(r.at(0).classes == 1);
  CHECK(r.at(0).molecules == 3);

  const auto p = hierarchy_histogram(
      testing::build({ "c1ccncc1", "Cc1ccncc1", "CCc1ccncc1" }));
  REQUIRE(p.count(1));
  CHECK(p.at(1).classes == 1);
  CHECK(p.at(1).molecules == 3);
  CHECK_FALSE(p.count(0));
}

TEST_CASE("degree examples") {
  const auto edgeless = degree_distribution(testing::build(kUnique), 3, 1);
  CHECK(edgeless.histogram == std::map<int, std::int64_t> { { 0, 5 } });

  const auto ether = testing::build({ "c1ccc(COc2ccccc2)cc1" });
  const auto d = degree_distribution(ether, 3, 1);
  REQUIRE(!d.levels.empty());
  CHECK(d.levels[0].level == 1);
  REQUIRE(d.levels[0].top.size() == 1);
  CHECK(d.levels[0].top[0].scaffold.key == "c1ccccc1");
  CHECK(d.levels[0].top[0].out_degree == 1);

  const auto &idx = testing::desk().index;
  const auto desk = degree_distribution(idx, 10, 3);
  std::int64_t sum = 0, count = 0;
  for (const auto &[deg, n]: desk.histogram) {
    sum += deg * n;
    count += n;
  }
  CHECK(sum == static_cast<std::int64_t>(idx.edges().size()));
  CHECK(count == static_cast<std::int64_t>(idx.scaffolds().size()) - 1);
}

TEST_CASE("tail slope examples") {
  // Sizes whose square divides 10^12 give exact size^-2 counts.
  SizeHistogram exact;
  for (std::int64_t s = 1; s <= 1000; ++s)
    if (1'000'000'000'000 % (s * s) == 0)
      exact[s] = 1'000'000'000'000 / (s * s);
  const TailFit fit = fit_tail_slope(exact, 1);
  CHECK(std::abs(fit.slope + 2.0) <= 1e-9);
  CHECK(fit.r2 == doctest::Approx(1.0));

  SizeHistogram uniform;
  for (std::int64_t s = 10; s < 40; ++s)
    uniform[s] = 7;
  CHECK(std::abs(fit_tail_slope(uniform).slope) <= 1e-12);

  try {
    fit_tail_slope(SizeHistogram { { 10, 1 }, { 11, 1 } });
    FAIL("expected InsufficientPoints");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kInsufficientPoints);
  }
}

TEST_CASE("desk statistics against independent oracles") {
  const auto &idx = testing::desk().index;
  std::vector<std::string> keys;
  for (const auto &m: idx.molecules())
    keys.push_back(idx.scaffold(m.scaffold_id).scaffold.key);

  std::map<std::string, std::int64_t> groups;
  for (const auto &k: keys)
    ++groups[k];
  SizeHistogram want;
  for (const auto &[k, n]: groups)
    ++want[n];
  CHECK(class_size_histogram(idx) == want);

  const auto curve = coverage_curve(idx);
  const auto oracle_curve = oracle::coverage(keys);
  REQUIRE(curve.size() == oracle_curve.size());
  bool same = true;
  for (std::size_t i = 0; i < curve.size(); ++i)
    same = same && curve[i].classes == oracle_curve[i].first &&
           curve[i].molecules == oracle_curve[i].second;
  CHECK(same);
  CHECK(coverage_from_histogram(class_size_histogram(idx)) == curve);

  std::map<int, std::pair<std::int64_t, std::int64_t>> levels;
  for (const auto &[k, n]: groups) {
    const int level = idx.scaffold(idx.require(k)).scaffold.ring_count;
    levels[level].first += 1;
    levels[level].second += n;
  }
  const auto h = hierarchy_histogram(idx);
  for (const auto &[level, counts]: levels) {
    REQUIRE(h.count(level));
    CHECK(h.at(level).classes == counts.first);
    CHECK(h.at(level).molecules == counts.second);
  }

  std::vector<std::pair<double, double>> points;
  for (const auto &[size, count]: want)
    if (size >= kDefaultTailCutoff)
      points.emplace_back(std::log(static_cast<double>(size)),
                          std::log(static_cast<double>(count)));
  const auto [slope, r2] = oracle::regression(points);
  const TailFit fit = fit_tail_slope(want);
  CHECK(std::abs(fit.slope - static_cast<double>(slope)) <= 1e-9);
  CHECK(std::abs(fit.r2 - static_cast<double>(r2)) <= 1e-9);
}

TEST_CASE("stats json is deterministic and well formed") {
  const auto &idx = testing::desk().index;
  const std::string a = stats_json(compute_stats(idx));
  const std::string b = stats_json(compute_stats(idx));
  CHECK(a == b);
  CHECK(testing::stats_schema_error(a) == "");
  const auto j = nlohmann::json::parse(a);
  CHECK(j["totals"]["molecules"].get<std::int64_t>() ==
        static_cast<std::int64_t>(idx.molecules().size()));
  CHECK_FALSE(stats_tsv(compute_stats(idx)).empty());
}

}  // TEST_SUITE
