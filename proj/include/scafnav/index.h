#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scafnav/error.h"
#include "scafnav/scaffold.h"

namespace scafnav {

inline constexpr int kIndexFormatVersion = 1;

struct MoleculeRecord {
  int id = 0;
  std::string canonical;
  int scaffold_id = 0;
  std::string source_tag;

  bool operator==(const MoleculeRecord &) const = default;
};

struct ScaffoldClass {
  Scaffold scaffold;
  int scaffold_id = 0;
  std::vector<int> members;  // molecule ids, ascending

  bool operator==(const ScaffoldClass &) const = default;
};

struct RejectRecord {
  std::int64_t line_no = 0;
  std::string reason;
  std::string raw_text;

  bool operator==(const RejectRecord &) const = default;
};

struct BuildParams {
  // Multi-fragment inputs keep their largest component; when false they are
  // rejected as MultiComponentInput.
  bool keep_largest_fragment = true;
  // Scaffolds with more rings are not fragmented and are listed as
  // budget_exceeded in the manifest.
  int max_fragment_rings = 10;

  bool operator==(const BuildParams &) const = default;
};

struct Manifest {
  int format_version = kIndexFormatVersion;
  std::int64_t records = 0;
  std::int64_t molecules = 0;
  std::int64_t duplicates = 0;
  std::int64_t rejects = 0;
  std::int64_t scaffolds = 0;
  std::int64_t virtual_scaffolds = 0;
  std::int64_t edges = 0;
  int max_level = 0;
  BuildParams params;
  std::vector<std::string> budget_exceeded;  // scaffold keys, sorted

  bool operator==(const Manifest &) const = default;
};

// Result of the per-molecule work that needs no shared state.
struct PreparedMolecule {
  bool ok = false;
  std::string canonical;
  Scaffold scaffold;
  std::optional<ErrorCode> error;
  std::string message;
};

PreparedMolecule prepare_molecule(std::string_view smiles,
                                  const BuildParams &params = {});

enum class InsertStatus { kAdded, kDuplicate, kRejected };

struct InsertOutcome {
  InsertStatus status = InsertStatus::kRejected;
  int molecule_id = -1;
  std::string reason;  // set when rejected
};

class HypergraphIndex;

// Mutable build state. Molecules are inserted (in any number of calls),
// then build_graph() seals the result.
class IndexBuilder {
public:
  explicit IndexBuilder(BuildParams params = {});

  InsertOutcome insert_molecule(std::string_view smiles,
                                std::string_view tag = {},
                                std::int64_t line_no = 0);
  InsertOutcome insert_prepared(const PreparedMolecule &prepared,
                                std::string_view raw_smiles,
                                std::string_view tag, std::int64_t line_no);

  std::int64_t records() const { return records_; }
  std::int64_t added() const {
    return static_cast<std::int64_t>(molecules_.size());
  }
  std::int64_t duplicates() const { return duplicates_; }
  const std::vector<RejectRecord> &rejects() const { return rejects_; }
  const BuildParams &params() const { return params_; }

  // Fragmentation closure, virtual scaffolds, edges and hierarchy buckets.
  // Scaffold ids are assigned by (ring_count, key), so S0 is always 0.
  HypergraphIndex build_graph(int workers = 1) &&;

private:
  struct PendingMolecule {
    std::string canonical;
    std::string tag;
    std::string scaffold_key;
  };

  BuildParams params_;
  std::int64_t records_ = 0;
  std::int64_t duplicates_ = 0;
  std::vector<PendingMolecule> molecules_;
  std::unordered_map<std::string, int> seen_;
  std::map<std::string, int> observed_;  // scaffold key -> ring count
  std::vector<RejectRecord> rejects_;
};

// Sealed, immutable H=(M,S) plus the scaffold graph.
class HypergraphIndex {
public:
  HypergraphIndex() = default;

  const std::vector<MoleculeRecord> &molecules() const { return molecules_; }
  const std::vector<ScaffoldClass> &scaffolds() const { return scaffolds_; }
  const ScaffoldClass &scaffold(int id) const { return scaffolds_.at(id); }
  const std::vector<RejectRecord> &rejects() const { return rejects_; }
  const Manifest &manifest() const { return manifest_; }

  std::optional<int> find(std::string_view key) const;
  // Throws Error(kUnknownScaffold).
  int require(std::string_view key) const;

  std::span<const int> successor_ids(int id) const {
    return succ_.at(id);
  }
  std::span<const int> predecessor_ids(int id) const {
    return pred_.at(id);
  }
  // (pred, succ) pairs, sorted.
  const std::vector<std::pair<int, int>> &edges() const { return edges_; }

  int max_level() const { return static_cast<int>(levels_.size()) - 1; }
  // Scaffold ids with the given ring count, ascending. Empty beyond
  // max_level().
  std::span<const int> level(int n) const;

  bool operator==(const HypergraphIndex &) const;

private:
  friend class IndexBuilder;
  friend HypergraphIndex assemble_index(std::vector<MoleculeRecord>,
                                        std::vector<ScaffoldClass>,
                                        std::vector<std::pair<int, int>>,
                                        std::vector<RejectRecord>, Manifest);

  void finish();

  std::vector<MoleculeRecord> molecules_;
  std::vector<ScaffoldClass> scaffolds_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<RejectRecord> rejects_;
  Manifest manifest_;

  std::unordered_map<std::string, int> by_key_;
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
  std::vector<std::vector<int>> levels_;
};

// Builds the derived lookup tables of an index from its stored parts.
// Member lists are recomputed from the molecules.
HypergraphIndex assemble_index(std::vector<MoleculeRecord> molecules,
                               std::vector<ScaffoldClass> scaffolds,
                               std::vector<std::pair<int, int>> edges,
                               std::vector<RejectRecord> rejects,
                               Manifest manifest);

// Class members in id order, at most `limit` of them when given.
std::vector<MoleculeRecord> expand_class(const HypergraphIndex &idx,
                                         std::string_view key,
                                         std::optional<std::size_t> limit = {});
std::vector<Scaffold> successors(const HypergraphIndex &idx,
                                 std::string_view key);
std::vector<Scaffold> predecessors(const HypergraphIndex &idx,
                                   std::string_view key);

// Directory layout: manifest.json, molecules.tsv, scaffolds.tsv, edges.tsv,
// rejects.tsv. Throws Error(kIoError).
Manifest save_index(const HypergraphIndex &idx,
                    const std::filesystem::path &dir);
// Throws Error(kIoError | kFormatVersionMismatch | kChecksumMismatch).
HypergraphIndex load_index(const std::filesystem::path &dir);

// Manifest as JSON text (checksums excluded), shared by CLI and server.
std::string manifest_json(const Manifest &m);

}  // namespace scafnav
