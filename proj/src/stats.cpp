#include "scafnav/stats.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "scafnav/error.h"

namespace scafnav {
namespace {

using nlohmann::ordered_json;

bool is_sentinel(const ScaffoldClass &c) {
  return c.scaffold.is_ringless() && c.members.empty();
}

bool is_class(const ScaffoldClass &c) { return !c.scaffold.is_virtual; }

std::vector<CoveragePoint> accumulate(const std::vector<std::int64_t> &sizes) {
  std::int64_t total = 0;
  for (auto s: sizes)
    total += s;
  std::vector<CoveragePoint> out;
  out.reserve(sizes.size() + 1);
  out.push_back({ 0, 0, total == 0 ? 1.0 : 0.0 });
  std::int64_t covered = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    covered += sizes[i];
    const double fraction =
        covered == total ? 1.0
                         : static_cast<double>(covered) /
                               static_cast<double>(total);
    out.push_back({ static_cast<std::int64_t>(i + 1), covered, fraction });
  }
  return out;
}

ordered_json entry_json(const DegreeEntry &e) {
  return { { "scaffold", e.scaffold.key },
           { "ring_count", e.scaffold.ring_count },
           { "out_degree", e.out_degree },
           { "class_size", e.class_size },
           { "virtual", e.scaffold.is_virtual } };
}

}  // namespace

SizeHistogram class_size_histogram(const HypergraphIndex &idx) {
  SizeHistogram h;
  for (const auto &c: idx.scaffolds())
    if (is_class(c))
      ++h[static_cast<std::int64_t>(c.members.size())];
  return h;
}

std::vector<CoveragePoint> coverage_curve(const HypergraphIndex &idx) {
  std::vector<const ScaffoldClass *> classes;
  for (const auto &c: idx.scaffolds())
    if (is_class(c))
      classes.push_back(&c);
  std::sort(classes.begin(), classes.end(),
            [](const ScaffoldClass *a, const ScaffoldClass *b) {
              if (a->members.size() != b->members.size())
                return a->members.size() > b->members.size();
              return a->scaffold.key < b->scaffold.key;
            });
  std::vector<std::int64_t> sizes;
  sizes.reserve(classes.size());
  for (const auto *c: classes)
    sizes.push_back(static_cast<std::int64_t>(c->members.size()));
  return accumulate(sizes);
}

std::vector<CoveragePoint> coverage_from_histogram(const SizeHistogram &hist) {
  std::vector<std::int64_t> sizes;
  for (auto it = hist.rbegin(); it != hist.rend(); ++it)
    sizes.insert(sizes.end(), static_cast<std::size_t>(it->second), it->first);
  return accumulate(sizes);
}

std::vector<CoveragePoint> downsample(const std::vector<CoveragePoint> &curve,
                                      std::size_t max_points) {
  if (curve.size() <= max_points || max_points < 2)
    return curve;
  std::vector<CoveragePoint> out;
  out.reserve(max_points);
  const std::size_t last = curve.size() - 1;
  for (std::size_t i = 0; i < max_points; ++i)
    out.push_back(curve[i * last / (max_points - 1)]);
  return out;
}

std::map<int, LevelCounts> hierarchy_histogram(const HypergraphIndex &idx) {
  std::map<int, LevelCounts> h;
  for (const auto &c: idx.scaffolds()) {
    if (is_sentinel(c))
      continue;
    auto &l = h[c.scaffold.ring_count];
    if (c.scaffold.is_virtual)
      ++l.virtual_classes;
    else
      ++l.classes;
    l.molecules += static_cast<std::int64_t>(c.members.size());
  }
  return h;
}

DegreeReport degree_distribution(const HypergraphIndex &idx, int top_k,
                                 std::uint64_t seed) {
  DegreeReport r;
  for (const auto &c: idx.scaffolds())
    if (!c.scaffold.is_ringless())
      ++r.histogram[static_cast<int>(idx.successor_ids(c.scaffold_id).size())];

  auto entry = [&](int id) {
    const auto &c = idx.scaffold(id);
    return DegreeEntry { c.scaffold,
                         static_cast<int>(idx.successor_ids(id).size()),
                         static_cast<std::int64_t>(c.members.size()) };
  };
  std::mt19937_64 rng(seed);
  const std::size_t k = top_k < 0 ? 0 : static_cast<std::size_t>(top_k);
  for (int level = 1; level <= 3; ++level) {
    LevelDegreeReport lr;
    lr.level = level;
    std::vector<DegreeEntry> all;
    for (int id: idx.level(level))
      all.push_back(entry(id));
    if (all.empty()) {
      r.levels.push_back(std::move(lr));
      continue;
    }
    auto by_degree = all;
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [](const DegreeEntry &a, const DegreeEntry &b) {
                       if (a.out_degree != b.out_degree)
                         return a.out_degree > b.out_degree;
                       return a.scaffold.key < b.scaffold.key;
                     });
    lr.top.assign(by_degree.begin(),
                  by_degree.begin() +
                      static_cast<std::ptrdiff_t>(std::min(k, by_degree.size())));

    const int min_degree = by_degree.back().out_degree;
    std::vector<DegreeEntry> pool;
    for (auto &e: all)
      if (e.out_degree == min_degree)
        pool.push_back(e);
    const std::size_t take = std::min(k, pool.size());
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t j = i + rng() % (pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(take);
    std::sort(pool.begin(), pool.end(),
              [](const DegreeEntry &a, const DegreeEntry &b) {
                return a.scaffold.key < b.scaffold.key;
              });
    lr.min_degree_sample = std::move(pool);
    r.levels.push_back(std::move(lr));
  }
  return r;
}

TailFit fit_tail_slope(const SizeHistogram &hist, std::int64_t cutoff) {
  std::vector<double> xs, ys;
  for (const auto &[size, count]: hist) {
    if (size < cutoff || size <= 0 || count <= 0)
      continue;
    xs.push_back(std::log(static_cast<double>(size)));
    ys.push_back(std::log(static_cast<double>(count)));
  }
  if (xs.size() < 3)
    throw Error(ErrorCode::kInsufficientPoints,
                std::to_string(xs.size()) + " histogram bins at size >= " +
                    std::to_string(cutoff) + ", need 3");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  TailFit fit;
  fit.slope = sxy / sxx;
  fit.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.cutoff = cutoff;
  fit.points = static_cast<int>(xs.size());
  return fit;
}

CorpusStats compute_stats(const HypergraphIndex &idx,
                          const StatsOptions &options) {
  CorpusStats s;
  s.options = options;
  s.molecules = static_cast<std::int64_t>(idx.molecules().size());
  for (const auto &c: idx.scaffolds()) {
    if (is_class(c))
      ++s.classes;
    else if (!is_sentinel(c))
      ++s.virtual_classes;
  }
  s.edges = static_cast<std::int64_t>(idx.edges().size());
  s.class_size_hist = class_size_histogram(idx);
  s.coverage = coverage_curve(idx);
  s.hierarchy = hierarchy_histogram(idx);
  s.degree = degree_distribution(idx, options.top_k, options.seed);
  try {
    s.tail_fit = fit_tail_slope(s.class_size_hist, options.tail_cutoff);
  } catch (const Error &e) {
    if (e.code() != ErrorCode::kInsufficientPoints)
      throw;
  }
  return s;
}

std::string stats_json(const CorpusStats &s) {
  ordered_json j;
  j["totals"] = { { "molecules", s.molecules },
                  { "classes", s.classes },
                  { "virtual_classes", s.virtual_classes },
                  { "edges", s.edges },
                  { "compression_ratio",
                    s.molecules == 0 ? 0.0
                                     : static_cast<double>(s.classes) /
                                           static_cast<double>(s.molecules) } };
  j["class_size_hist"] = ordered_json::array();
  for (const auto &[size, count]: s.class_size_hist)
    j["class_size_hist"].push_back({ { "size", size }, { "count", count } });
  j["coverage_curve"] = ordered_json::array();
  for (const auto &p: downsample(s.coverage))
    j["coverage_curve"].push_back({ { "classes", p.classes },
                                    { "molecules", p.molecules },
                                    { "fraction", p.fraction } });
  j["hierarchy_hist"] = ordered_json::array();
  for (const auto &[level, c]: s.hierarchy)
    j["hierarchy_hist"].push_back({ { "level", level },
                                    { "classes", c.classes },
                                    { "virtual_classes", c.virtual_classes },
                                    { "molecules", c.molecules } });
  j["degree_hist"] = ordered_json::array();
  for (const auto &[degree, count]: s.degree.histogram)
    j["degree_hist"].push_back({ { "out_degree", degree },
                                 { "scaffolds", count } });
  if (s.tail_fit) {
    j["tail_fit"] = { { "slope", s.tail_fit->slope },
                      { "r2", s.tail_fit->r2 },
                      { "cutoff", s.tail_fit->cutoff },
                      { "points", s.tail_fit->points } };
  } else {
    j["tail_fit"] = { { "slope", nullptr },
                      { "r2", nullptr },
                      { "cutoff", s.options.tail_cutoff },
                      { "points", 0 },
                      { "error", "InsufficientPoints" } };
  }
  j["top_scaffolds_by_level"] = ordered_json::array();
  for (const auto &lr: s.degree.levels) {
    ordered_json level { { "level", lr.level },
                         { "top", ordered_json::array() },
                         { "min_degree_sample", ordered_json::array() } };
    for (const auto &e: lr.top)
      level["top"].push_back(entry_json(e));
    for (const auto &e: lr.min_degree_sample)
      level["min_degree_sample"].push_back(entry_json(e));
    j["top_scaffolds_by_level"].push_back(std::move(level));
  }
  return j.dump(2) + "\n";
}

std::string stats_tsv(const CorpusStats &s) {
  std::ostringstream out;
  out.precision(17);
  out << "totals\tmolecules\t" << s.molecules << '\n'
      << "totals\tclasses\t" << s.classes << '\n'
      << "totals\tvirtual_classes\t" << s.virtual_classes << '\n'
      << "totals\tedges\t" << s.edges << '\n';
  for (const auto &[size, count]: s.class_size_hist)
    out << "class_size\t" << size << '\t' << count << '\n';
  for (const auto &p: downsample(s.coverage))
    out << "coverage\t" << p.classes << '\t' << p.molecules << '\t'
        << p.fraction << '\n';
  for (const auto &[level, c]: s.hierarchy)
    out << "hierarchy\t" << level << '\t' << c.classes << '\t'
        << c.virtual_classes << '\t' << c.molecules << '\n';
  for (const auto &[degree, count]: s.degree.histogram)
    out << "degree\t" << degree << '\t' << count << '\n';
  if (s.tail_fit)
    out << "tail_fit\t" << s.tail_fit->slope << '\t' << s.tail_fit->r2
        << '\t' << s.tail_fit->cutoff << '\t' << s.tail_fit->points << '\n';
  for (const auto &lr: s.degree.levels) {
    for (const auto &e: lr.top)
      out << "top\t" << lr.level << '\t' << e.out_degree << '\t'
          << e.scaffold.key << '\n';
    for (const auto &e: lr.min_degree_sample)
      out << "min_degree\t" << lr.level << '\t' << e.out_degree << '\t'
          << e.scaffold.key << '\n';
  }
  return out.str();
}

}  // namespace scafnav
