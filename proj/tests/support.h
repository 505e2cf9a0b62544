#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scafnav/index.h"
#include "scafnav/ingest.h"

namespace testing {

inline std::filesystem::path data_path(const std::string &name) {
  return std::filesystem::path(SCAFNAV_TEST_DATA) / name;
}

inline std::string read_file(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::vector<std::string>>
read_tsv(const std::filesystem::path &p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, '\t'))
      row.push_back(field);
    if (!line.empty() && line.back() == '\t')
      row.emplace_back();
    rows.push_back(std::move(row));
  }
  return rows;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("scafnav_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  const std::filesystem::path &path() const { return path_; }
  std::filesystem::path operator/(const std::string &name) const {
    return path_ / name;
  }

private:
  std::filesystem::path path_;
};

// The bundled 10k desk corpus, built once per process.
inline const scafnav::IngestResult &desk() {
  static const scafnav::IngestResult r =
      scafnav::ingest_files({ data_path("desk_10k.smi") });
  return r;
}

inline scafnav::HypergraphIndex build(const std::vector<std::string> &smiles) {
  scafnav::IndexBuilder b;
  for (const auto &s: smiles)
    b.insert_molecule(s);
  return std::move(b).build_graph();
}

// Empty when `text` has the stats document shape, else the first problem.
inline std::string stats_schema_error(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    return e.what();
  }
  for (const char *f: { "totals", "class_size_hist", "coverage_curve",
                        "hierarchy_hist", "degree_hist", "tail_fit",
                        "top_scaffolds_by_level" })
    if (!j.contains(f))
      return std::string("missing ") + f;
  for (const char *f: { "molecules", "classes", "virtual_classes", "edges",
                        "compression_ratio" })
    if (!j["totals"].contains(f) || !j["totals"][f].is_number())
      return std::string("bad totals.") + f;
  for (const auto &row: j["class_size_hist"])
    if (!row["size"].is_number_integer() || !row["count"].is_number_integer())
      return "bad class_size_hist row";
  for (const auto &row: j["coverage_curve"])
    if (!row["classes"].is_number_integer() ||
        !row["molecules"].is_number_integer() || !row["fraction"].is_number())
      return "bad coverage_curve row";
  for (const auto &row: j["hierarchy_hist"])
    if (!row["level"].is_number_integer() ||
        !row["classes"].is_number_integer() ||
        !row["molecules"].is_number_integer())
      return "bad hierarchy_hist row";
  for (const auto &row: j["degree_hist"])
    if (!row["out_degree"].is_number_integer() ||
        !row["scaffolds"].is_number_integer())
      return "bad degree_hist row";
  if (!j["tail_fit"].contains("slope"))
    return "bad tail_fit";
  return {};
}

}  // namespace testing
