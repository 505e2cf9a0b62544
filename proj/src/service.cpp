#include "scafnav/service.h"

#include <charconv>
#include <functional>

#include "scafnav/canonical.h"
#include "scafnav/mcs.h"
#include "scafnav/smiles.h"

namespace scafnav {
namespace {

struct HttpError {
  int status;
  std::string message;
};

Json page_cursor(std::size_t next, std::size_t total) {
  if (next >= total)
    return nullptr;
  return "o" + std::to_string(next);
}

std::size_t parse_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::kBadRequest,
                "bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

std::size_t query_size(const std::map<std::string, std::string> &q,
                       const std::string &name, std::size_t fallback) {
  const auto it = q.find(name);
  return it == q.end() ? fallback : parse_size(it->second, name);
}

std::size_t query_limit(const std::map<std::string, std::string> &q) {
  const std::size_t limit = query_size(q, "limit", kDefaultPageLimit);
  if (limit == 0 || limit > kMaxPageLimit)
    throw Error(ErrorCode::kBadRequest,
                "limit must be in 1.." + std::to_string(kMaxPageLimit));
  return limit;
}

std::size_t query_offset(const std::map<std::string, std::string> &q) {
  const auto it = q.find("cursor");
  if (it == q.end() || it->second.empty())
    return 0;
  const std::string_view c = it->second;
  if (c.front() != 'o')
    throw Error(ErrorCode::kBadRequest, "bad cursor");
  return parse_size(c.substr(1), "cursor");
}

ConeCaps query_caps(const std::map<std::string, std::string> &q) {
  ConeCaps caps;
  caps.max_depth = static_cast<int>(
      query_size(q, "max_depth", static_cast<std::size_t>(caps.max_depth)));
  caps.max_size = query_size(q, "max_size", caps.max_size);
  return caps;
}

ConeCaps body_caps(const nlohmann::json &b) {
  ConeCaps caps;
  caps.max_depth = b.value("max_depth", caps.max_depth);
  caps.max_size = b.value("max_size", caps.max_size);
  return caps;
}

Json scaffold_list(const std::vector<Scaffold> &v,
                   const std::function<Json(const Scaffold &)> &ref) {
  Json out = Json::array();
  for (const auto &s: v)
    out.push_back(ref(s));
  return out;
}

Json truncation_notice(std::string message) {
  return { { "code", "truncated_upstream" }, { "message", std::move(message) } };
}

}  // namespace

std::string_view api_error_code(ErrorCode code) {
  if (code == ErrorCode::kUnknownScaffold)
    return "unknown_scaffold";
  if (is_parse_error(code))
    return "parse_error";
  switch (code) {
  case ErrorCode::kEmptyGraph:
  case ErrorCode::kMultiComponentInput:
  case ErrorCode::kInvalidScaffold:
  case ErrorCode::kTooManyHits:
  case ErrorCode::kEmptySubset:
  case ErrorCode::kUnknownKind:
  case ErrorCode::kBadRequest:
  case ErrorCode::kInsufficientPoints:
    return "bad_request";
  case ErrorCode::kTimeout:
  case ErrorCode::kBudgetExceeded:
    return "truncated_upstream";
  default:
    return "internal";
  }
}

int api_error_status(ErrorCode code) {
  const auto name = api_error_code(code);
  if (name == "unknown_scaffold")
    return 404;
  if (name == "parse_error" || name == "bad_request")
    return 400;
  if (name == "truncated_upstream")
    return 200;
  return 500;
}

Json api_error_json(const Error &e) {
  Json j { { "code", api_error_code(e.code()) },
           { "message", e.detail() },
           { "detail", { { "error", error_code_name(e.code()) } } } };
  if (api_error_code(e.code()) == "truncated_upstream")
    j["truncated"] = true;
  return j;
}

QueryService::QueryService(const HypergraphIndex &idx,
                           StatsOptions stats_options)
    : idx_(idx), stats_json_(stats_json(compute_stats(idx, stats_options))) { }

int QueryService::resolve_key(std::string_view key) const {
  if (const auto id = idx_.find(key))
    return *id;
  try {
    if (const auto id = idx_.find(canonicalize(key)))
      return *id;
  } catch (const Error &) {
  }
  return idx_.require(key);
}

Json QueryService::scaffold_ref(int id) const {
  const auto &c = idx_.scaffold(id);
  return { { "scaffold", c.scaffold.key },
           { "ring_count", c.scaffold.ring_count },
           { "virtual", c.scaffold.is_virtual },
           { "class_size", c.members.size() } };
}

Json QueryService::scaffold_ref(const Scaffold &s) const {
  return scaffold_ref(idx_.require(s.key));
}

Json QueryService::scaffold_summary(std::string_view smiles) const {
  const Scaffold s = scaffold_key(smiles);
  const auto id = idx_.find(s.key);
  Json j { { "scaffold", s.key },
           { "ring_count", s.ring_count },
           { "class_size", id ? idx_.scaffold(*id).members.size() : 0 },
           { "virtual", id ? idx_.scaffold(*id).scaffold.is_virtual : false },
           { "indexed", id.has_value() } };
  return j;
}

Json QueryService::expand(std::string_view key, std::size_t limit,
                          std::size_t offset) const {
  const int id = resolve_key(key);
  const auto &members = idx_.scaffold(id).members;
  Json j = scaffold_ref(id);
  j["members"] = Json::array();
  const std::size_t end = std::min(members.size(), offset + limit);
  for (std::size_t i = offset; i < end; ++i) {
    const auto &m = idx_.molecules()[members[i]];
    j["members"].push_back({ { "id", m.id },
                             { "smiles", m.canonical },
                             { "source_tag", m.source_tag } });
  }
  j["total"] = members.size();
  j["next_cursor"] = page_cursor(end, members.size());
  return j;
}

Json QueryService::neighbors(std::string_view key, bool succ) const {
  const int id = resolve_key(key);
  const auto &k = idx_.scaffold(id).scaffold.key;
  const auto list = succ ? successors(idx_, k) : predecessors(idx_, k);
  Json j = scaffold_ref(id);
  j[succ ? "successors" : "predecessors"] =
      scaffold_list(list, [&](const Scaffold &s) { return scaffold_ref(s); });
  return j;
}

Json QueryService::cone(std::string_view key, bool upper,
                        const ConeCaps &caps, std::size_t limit,
                        std::size_t offset) const {
  const int id = resolve_key(key);
  const auto &k = idx_.scaffold(id).scaffold.key;
  const ConeResult c =
      upper ? upper_cone(idx_, k, caps) : lower_cone_indexed(idx_, k, caps);
  Json j { { "root", scaffold_ref(id) },
           { "direction", upper ? "upper" : "lower" },
           { "members", Json::array() },
           { "total", c.members.size() },
           { "truncated", c.truncated } };
  const std::size_t end = std::min(c.members.size(), offset + limit);
  for (std::size_t i = offset; i < end; ++i)
    j["members"].push_back(scaffold_ref(c.members[i]));
  j["next_cursor"] = page_cursor(end, c.members.size());
  if (c.truncated)
    j["notice"] = truncation_notice("cone cut at max_depth " +
                                    std::to_string(caps.max_depth) +
                                    " or max_size " +
                                    std::to_string(caps.max_size));
  return j;
}

Json QueryService::hierarchy(int level, std::size_t limit,
                             std::size_t offset) const {
  const auto ids = idx_.level(level);
  Json j { { "level", level },
           { "total", ids.size() },
           { "scaffolds", Json::array() } };
  const std::size_t end = std::min(ids.size(), offset + limit);
  for (std::size_t i = offset; i < end; ++i)
    j["scaffolds"].push_back(scaffold_ref(ids[i]));
  j["next_cursor"] = page_cursor(end, ids.size());
  return j;
}

Json QueryService::mcs(std::string_view s1, std::string_view s2,
                       std::int64_t budget) const {
  const McsResult r = intersection(Scaffold { std::string(s1), 0, false },
                                   Scaffold { std::string(s2), 0, false },
                                   budget);
  Json j { { "s1", s1 },
           { "s2", s2 },
           { "common", write_canonical(r.common) },
           { "atoms", r.common.num_atoms() },
           { "bonds", r.common.num_bonds() },
           { "map_s1", r.map_a },
           { "map_s2", r.map_b },
           { "exhausted", r.exhausted } };
  if (!r.exhausted)
    j["notice"] = truncation_notice("MCS budget of " +
                                    std::to_string(budget) +
                                    " expansions reached");
  return j;
}

Json QueryService::union_of(std::string_view s1, std::string_view s2) const {
  const auto &k1 = idx_.scaffold(resolve_key(s1)).scaffold.key;
  const auto &k2 = idx_.scaffold(resolve_key(s2)).scaffold.key;
  return { { "s1", k1 },
           { "s2", k2 },
           { "scaffolds",
             scaffold_list(union_scaffolds(idx_, k1, k2),
                           [&](const Scaffold &s) { return scaffold_ref(s); }) } };
}

Json QueryService::fbdd(const std::vector<std::string> &hits,
                        const std::optional<std::vector<int>> &subset,
                        bool search, int min_subset_size,
                        const ConeCaps &caps) const {
  auto hit_json = [&](const std::vector<HitResolution> &rs) {
    Json out = Json::array();
    for (const auto &r: rs) {
      Json h { { "input", r.input } };
      if (r.scaffold) {
        h["scaffold"] = r.scaffold->key;
        h["ring_count"] = r.scaffold->ring_count;
      } else {
        h["error"] = { { "code", r.error }, { "message", r.message } };
      }
      out.push_back(std::move(h));
    }
    return out;
  };
  auto ref = [&](const Scaffold &s) { return scaffold_ref(s); };
  Json j;
  bool truncated = false;
  if (search) {
    const auto r = fbdd_search(idx_, hits, min_subset_size, caps);
    j["hits"] = hit_json(r.hits);
    j["subsets"] = Json::array();
    for (const auto &s: r.subsets)
      j["subsets"].push_back({ { "subset", s.subset },
                               { "scaffolds", scaffold_list(s.scaffolds, ref) } });
    truncated = r.truncated;
  } else {
    const auto r = fbdd_intersection(idx_, hits, subset, caps);
    j["hits"] = hit_json(r.hits);
    j["subset"] = r.subset;
    j["scaffolds"] = scaffold_list(r.scaffolds, ref);
    truncated = r.truncated;
  }
  j["truncated"] = truncated;
  if (truncated)
    j["notice"] = truncation_notice("an upper cone hit its caps");
  return j;
}

Json QueryService::healthz() const {
  return { { "status", "ok" },
           { "index_manifest", Json::parse(manifest_json(idx_.manifest())) } };
}

ApiResponse QueryService::handle(std::string_view method,
                                 std::string_view path,
                                 const std::map<std::string, std::string> &q,
                                 std::string_view body) const {
  try {
    const bool get = method == "GET";
    const bool post = method == "POST";
    auto require = [&](bool ok) {
      if (!ok)
        throw HttpError { 405, "method not allowed" };
    };
    auto ok = [](const Json &j) { return ApiResponse { 200, j.dump() }; };

    if (path == "/v1/healthz") {
      require(get);
      return ok(healthz());
    }
    if (path == "/v1/stats") {
      require(get);
      return { 200, stats_json_ };
    }
    if (path == "/v1/scaffold") {
      require(get);
      const auto it = q.find("smiles");
      if (it == q.end())
        throw Error(ErrorCode::kBadRequest, "missing smiles parameter");
      return ok(scaffold_summary(it->second));
    }
    constexpr std::string_view kScaffoldPrefix = "/v1/scaffold/";
    if (path.starts_with(kScaffoldPrefix)) {
      require(get);
      const auto rest = path.substr(kScaffoldPrefix.size());
      const auto slash = rest.rfind('/');
      if (slash == std::string_view::npos)
        throw HttpError { 404, "no such endpoint" };
      const auto key = rest.substr(0, slash);
      const auto op = rest.substr(slash + 1);
      if (op == "expand")
        return ok(expand(key, query_limit(q), query_offset(q)));
      if (op == "successors" || op == "predecessors")
        return ok(neighbors(key, op == "successors"));
      if (op == "uppercone" || op == "lowercone")
        return ok(cone(key, op == "uppercone", query_caps(q), query_limit(q),
                       query_offset(q)));
      throw HttpError { 404, "no such endpoint" };
    }
    constexpr std::string_view kHierarchyPrefix = "/v1/hierarchy/";
    if (path.starts_with(kHierarchyPrefix)) {
      require(get);
      const auto n = parse_size(path.substr(kHierarchyPrefix.size()), "level");
      return ok(hierarchy(static_cast<int>(n), query_limit(q),
                          query_offset(q)));
    }
    if (path == "/v1/mcs" || path == "/v1/union" || path == "/v1/fbdd") {
      require(post);
      nlohmann::json b;
      try {
        b = nlohmann::json::parse(body);
      } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::kBadRequest,
                    "request body is not JSON: " + std::string(e.what()));
      }
      if (!b.is_object())
        throw Error(ErrorCode::kBadRequest, "request body must be an object");
      if (path == "/v1/mcs")
        return ok(mcs(b.at("s1").get<std::string>(),
                      b.at("s2").get<std::string>(),
                      b.value("budget", kDefaultMcsBudget)));
      if (path == "/v1/union")
        return ok(union_of(b.at("s1").get<std::string>(),
                           b.at("s2").get<std::string>()));
      std::optional<std::vector<int>> subset;
      if (b.contains("subset") && !b["subset"].is_null())
        subset = b["subset"].get<std::vector<int>>();
      return ok(fbdd(b.at("hits").get<std::vector<std::string>>(), subset,
                     b.value("search", false), b.value("min_subset_size", 1),
                     body_caps(b)));
    }
    throw HttpError { 404, "no such endpoint" };
  } catch (const HttpError &e) {
    Json j { { "code", "bad_request" }, { "message", e.message } };
    return { e.status, j.dump() };
  } catch (const Error &e) {
    return { api_error_status(e.code()), api_error_json(e).dump() };
  } catch (const nlohmann::json::exception &e) {
    Json j { { "code", "bad_request" },
             { "message", std::string("malformed request: ") + e.what() } };
    return { 400, j.dump() };
  } catch (const std::exception &e) {
    Json j { { "code", "internal" }, { "message", e.what() } };
    return { 500, j.dump() };
  }
}

}  // namespace scafnav
