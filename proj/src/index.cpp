#include "scafnav/index.h"

#include <algorithm>
#include <tuple>

#include "internal/parallel.h"
#include "scafnav/canonical.h"
#include "scafnav/fragment.h"
#include "scafnav/smiles.h"

namespace scafnav {

PreparedMolecule prepare_molecule(std::string_view smiles,
                                  const BuildParams &params) {
  PreparedMolecule out;
  try {
    MolGraph g = parse_smiles(smiles);
    int components = 0;
    g.component_ids(&components);
    if (components > 1) {
      if (!params.keep_largest_fragment)
        throw Error(ErrorCode::kMultiComponentInput,
                    "input has " + std::to_string(components) +
                        " components");
      g = largest_component(g);
    }
    out.canonical = write_canonical(g);
    out.scaffold = scaffold_of(g);
    out.ok = true;
  } catch (const Error &e) {
    out.error = e.code();
    out.message = e.detail();
  }
  return out;
}

IndexBuilder::IndexBuilder(BuildParams params) : params_(params) { }

InsertOutcome IndexBuilder::insert_molecule(std::string_view smiles,
                                            std::string_view tag,
                                            std::int64_t line_no) {
  return insert_prepared(prepare_molecule(smiles, params_), smiles, tag,
                         line_no);
}

InsertOutcome IndexBuilder::insert_prepared(const PreparedMolecule &prepared,
                                            std::string_view raw_smiles,
                                            std::string_view tag,
                                            std::int64_t line_no) {
  ++records_;
  InsertOutcome out;
  if (!prepared.ok) {
    out.status = InsertStatus::kRejected;
    out.reason = std::string(error_code_name(*prepared.error));
    rejects_.push_back({ line_no, out.reason, std::string(raw_smiles) });
    return out;
  }
  const auto [it, fresh] = seen_.try_emplace(
      prepared.canonical, static_cast<int>(molecules_.size()));
  if (!fresh) {
    ++duplicates_;
    out.status = InsertStatus::kDuplicate;
    out.molecule_id = it->second;
    return out;
  }
  molecules_.push_back(
      { prepared.canonical, std::string(tag), prepared.scaffold.key });
  observed_.try_emplace(prepared.scaffold.key, prepared.scaffold.ring_count);
  out.status = InsertStatus::kAdded;
  out.molecule_id = it->second;
  return out;
}

HypergraphIndex IndexBuilder::build_graph(int workers) && {
  struct Node {
    int ring_count;
    bool is_virtual;
  };
  std::map<std::string, Node> nodes;
  for (const auto &[key, rings]: observed_)
    nodes.emplace(key, Node { rings, false });
  nodes.try_emplace(std::string(), Node { 0, true });

  int top = 0;
  for (const auto &[key, node]: nodes)
    top = std::max(top, node.ring_count);

  std::vector<std::pair<std::string, std::string>> edge_keys;
  std::vector<std::string> budget_exceeded;
  for (int level = top; level >= 1; --level) {
    std::vector<std::string> wave;
    for (const auto &[key, node]: nodes)
      if (node.ring_count == level)
        wave.push_back(key);
    if (level > params_.max_fragment_rings) {
      budget_exceeded.insert(budget_exceeded.end(), wave.begin(), wave.end());
      continue;
    }
    if (level == 1)
      break;
    std::vector<std::vector<Scaffold>> pieces(wave.size());
    std::vector<char> failed(wave.size(), 0);
    detail::parallel_for(wave.size(), workers, [&](std::size_t i) {
      try {
        pieces[i] = fragment_graph_once(parse_smiles(wave[i]));
      } catch (const Error &) {
        failed[i] = 1;
      }
    });
    for (std::size_t i = 0; i < wave.size(); ++i) {
      if (failed[i])
        budget_exceeded.push_back(wave[i]);
      for (const auto &p: pieces[i]) {
        nodes.try_emplace(p.key, Node { p.ring_count, true });
        edge_keys.emplace_back(p.key, wave[i]);
      }
    }
  }

  std::vector<std::pair<int, std::string>> order;
  order.reserve(nodes.size());
  for (const auto &[key, node]: nodes)
    order.emplace_back(node.ring_count, key);
  std::sort(order.begin(), order.end());

  std::vector<ScaffoldClass> scaffolds;
  std::unordered_map<std::string, int> id_of;
  for (const auto &[rings, key]: order) {
    const int id = static_cast<int>(scaffolds.size());
    ScaffoldClass c;
    c.scaffold = Scaffold { key, rings, nodes.at(key).is_virtual };
    c.scaffold_id = id;
    scaffolds.push_back(std::move(c));
    id_of.emplace(key, id);
  }

  std::vector<MoleculeRecord> molecules;
  molecules.reserve(molecules_.size());
  for (auto &m: molecules_) {
    MoleculeRecord r;
    r.id = static_cast<int>(molecules.size());
    r.canonical = std::move(m.canonical);
    r.scaffold_id = id_of.at(m.scaffold_key);
    r.source_tag = std::move(m.tag);
    molecules.push_back(std::move(r));
  }

  std::vector<std::pair<int, int>> edges;
  edges.reserve(edge_keys.size());
  for (const auto &[p, s]: edge_keys)
    edges.emplace_back(id_of.at(p), id_of.at(s));

  Manifest manifest;
  manifest.records = records_;
  manifest.duplicates = duplicates_;
  manifest.params = params_;
  std::sort(budget_exceeded.begin(), budget_exceeded.end());
  manifest.budget_exceeded = std::move(budget_exceeded);

  return assemble_index(std::move(molecules), std::move(scaffolds),
                        std::move(edges), std::move(rejects_),
                        std::move(manifest));
}

HypergraphIndex assemble_index(std::vector<MoleculeRecord> molecules,
                               std::vector<ScaffoldClass> scaffolds,
                               std::vector<std::pair<int, int>> edges,
                               std::vector<RejectRecord> rejects,
                               Manifest manifest) {
  HypergraphIndex idx;
  const int n = static_cast<int>(scaffolds.size());
  for (auto &c: scaffolds)
    c.members.clear();
  for (const auto &m: molecules) {
    if (m.scaffold_id < 0 || m.scaffold_id >= n)
      throw Error(ErrorCode::kIoError,
                  "molecule " + std::to_string(m.id) +
                      " refers to unknown scaffold " +
                      std::to_string(m.scaffold_id));
    scaffolds[m.scaffold_id].members.push_back(m.id);
  }
  for (auto &c: scaffolds)
    std::sort(c.members.begin(), c.members.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto &[p, s]: edges)
    if (p < 0 || p >= n || s < 0 || s >= n)
      throw Error(ErrorCode::kIoError, "edge refers to unknown scaffold");

  idx.molecules_ = std::move(molecules);
  idx.scaffolds_ = std::move(scaffolds);
  idx.edges_ = std::move(edges);
  idx.rejects_ = std::move(rejects);
  idx.manifest_ = std::move(manifest);
  idx.finish();
  return idx;
}

void HypergraphIndex::finish() {
  const int n = static_cast<int>(scaffolds_.size());
  by_key_.clear();
  succ_.assign(n, {});
  pred_.assign(n, {});
  levels_.clear();
  std::int64_t virtuals = 0;
  for (const auto &c: scaffolds_) {
    by_key_.emplace(c.scaffold.key, c.scaffold_id);
    const int lvl = c.scaffold.ring_count;
    if (static_cast<int>(levels_.size()) <= lvl)
      levels_.resize(lvl + 1);
    levels_[lvl].push_back(c.scaffold_id);
    if (c.scaffold.is_virtual)
      ++virtuals;
  }
  for (auto &ids: levels_)
    std::sort(ids.begin(), ids.end());
  for (const auto &[p, s]: edges_) {
    succ_[p].push_back(s);
    pred_[s].push_back(p);
  }
  manifest_.molecules = static_cast<std::int64_t>(molecules_.size());
  manifest_.rejects = static_cast<std::int64_t>(rejects_.size());
  manifest_.scaffolds = n;
  manifest_.virtual_scaffolds = virtuals;
  manifest_.edges = static_cast<std::int64_t>(edges_.size());
  manifest_.max_level = max_level();
}

std::optional<int> HypergraphIndex::find(std::string_view key) const {
  const auto it = by_key_.find(std::string(key));
  if (it == by_key_.end())
    return std::nullopt;
  return it->second;
}

int HypergraphIndex::require(std::string_view key) const {
  const auto id = find(key);
  if (!id)
    throw Error(ErrorCode::kUnknownScaffold,
                "scaffold '" + std::string(key) + "' is not indexed");
  return *id;
}

std::span<const int> HypergraphIndex::level(int n) const {
  if (n < 0 || n >= static_cast<int>(levels_.size()))
    return {};
  return levels_[n];
}

bool HypergraphIndex::operator==(const HypergraphIndex &o) const {
  return molecules_ == o.molecules_ && scaffolds_ == o.scaffolds_ &&
         edges_ == o.edges_ && rejects_ == o.rejects_ &&
         manifest_ == o.manifest_;
}

std::vector<MoleculeRecord> expand_class(const HypergraphIndex &idx,
                                         std::string_view key,
                                         std::optional<std::size_t> limit) {
  const auto &members = idx.scaffold(idx.require(key)).members;
  const std::size_t n = std::min(members.size(), limit.value_or(members.size()));
  std::vector<MoleculeRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(idx.molecules()[members[i]]);
  return out;
}

namespace {

std::vector<Scaffold> scaffolds_by_key(const HypergraphIndex &idx,
                                       std::span<const int> ids) {
  std::vector<Scaffold> out;
  out.reserve(ids.size());
  for (int id: ids)
    out.push_back(idx.scaffold(id).scaffold);
  std::sort(out.begin(), out.end(), [](const Scaffold &a, const Scaffold &b) {
    return a.key < b.key;
  });
  return out;
}

}  // namespace

std::vector<Scaffold> successors(const HypergraphIndex &idx,
                                 std::string_view key) {
  return scaffolds_by_key(idx, idx.successor_ids(idx.require(key)));
}

std::vector<Scaffold> predecessors(const HypergraphIndex &idx,
                                   std::string_view key) {
  return scaffolds_by_key(idx, idx.predecessor_ids(idx.require(key)));
}

}  // namespace scafnav
