#pragma once

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "scafnav/algebra.h"
#include "scafnav/index.h"
#include "scafnav/stats.h"

namespace scafnav {

using Json = nlohmann::ordered_json;

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
};

// Stable wire names for API errors.
std::string_view api_error_code(ErrorCode code);
int api_error_status(ErrorCode code);
Json api_error_json(const Error &e);

inline constexpr std::size_t kDefaultPageLimit = 100;
inline constexpr std::size_t kMaxPageLimit = 10'000;

// The /v1 query surface over one sealed index, independent of transport.
// The CLI prints the same JSON documents.
class QueryService {
public:
  explicit QueryService(const HypergraphIndex &idx,
                        StatsOptions stats_options = {});

  // Dispatches a request; `path` excludes the query string. Never throws.
  ApiResponse handle(std::string_view method, std::string_view path,
                     const std::map<std::string, std::string> &query,
                     std::string_view body) const;

  // Looks a key up as given, then by its canonical form. Throws
  // Error(kUnknownScaffold).
  int resolve_key(std::string_view key) const;

  Json scaffold_summary(std::string_view smiles) const;
  Json expand(std::string_view key, std::size_t limit,
              std::size_t offset) const;
  Json neighbors(std::string_view key, bool successors) const;
  Json cone(std::string_view key, bool upper, const ConeCaps &caps,
            std::size_t limit, std::size_t offset) const;
  Json hierarchy(int level, std::size_t limit, std::size_t offset) const;
  Json mcs(std::string_view s1, std::string_view s2,
           std::int64_t budget) const;
  Json union_of(std::string_view s1, std::string_view s2) const;
  Json fbdd(const std::vector<std::string> &hits,
            const std::optional<std::vector<int>> &subset, bool search,
            int min_subset_size, const ConeCaps &caps) const;
  const std::string &stats() const { return stats_json_; }
  Json healthz() const;

  const HypergraphIndex &index() const { return idx_; }

private:
  Json scaffold_ref(int id) const;
  Json scaffold_ref(const Scaffold &s) const;

  const HypergraphIndex &idx_;
  std::string stats_json_;
};

}  // namespace scafnav
