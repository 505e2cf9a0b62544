#include "scafnav/cli.h"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "scafnav/export_pairs.h"
#include "scafnav/ingest.h"
#include "scafnav/mcs.h"
#include "scafnav/server.h"
#include "scafnav/service.h"
#include "scafnav/stats.h"

namespace scafnav {
namespace {

struct QueryArgs {
  std::string index;
  std::string format = "json";
  std::size_t limit = kDefaultPageLimit;
  std::string cursor;
  int max_depth = ConeCaps {}.max_depth;
  std::size_t max_size = ConeCaps {}.max_size;
  std::int64_t budget = kDefaultMcsBudget;
  std::vector<std::string> args;
  std::vector<int> subset;
  bool search = false;
  int min_subset_size = 1;
};

std::size_t cursor_offset(const std::string &cursor) {
  if (cursor.empty())
    return 0;
  if (cursor.front() != 'o' || cursor.size() < 2 ||
      cursor.find_first_not_of("0123456789", 1) != std::string::npos)
    throw Error(ErrorCode::kBadRequest, "bad cursor '" + cursor + "'");
  return std::stoull(cursor.substr(1));
}

void print_scaffold_rows(std::ostream &out, const Json &list) {
  for (const auto &s: list)
    out << s.at("scaffold").get<std::string>() << '\t'
        << s.at("ring_count").get<int>() << '\t'
        << (s.at("virtual").get<bool>() ? 1 : 0) << '\t'
        << s.at("class_size").get<std::size_t>() << '\n';
}

void print_tsv(std::ostream &out, const std::string &kind, const Json &j) {
  if (kind == "scaffold") {
    out << j.at("scaffold").get<std::string>() << '\t'
        << j.at("ring_count").get<int>() << '\n';
  } else if (kind == "expand") {
    for (const auto &m: j.at("members"))
      out << m.at("id").get<int>() << '\t' << m.at("smiles").get<std::string>()
          << '\t' << m.at("source_tag").get<std::string>() << '\n';
  } else if (kind == "successors" || kind == "predecessors") {
    print_scaffold_rows(out, j.at(kind));
  } else if (kind == "uppercone" || kind == "lowercone") {
    print_scaffold_rows(out, j.at("members"));
  } else if (kind == "mcs") {
    out << j.at("common").get<std::string>() << '\t'
        << j.at("atoms").get<int>() << '\t' << j.at("bonds").get<int>()
        << '\t' << (j.at("exhausted").get<bool>() ? 1 : 0) << '\n';
  } else if (kind == "union") {
    print_scaffold_rows(out, j.at("scaffolds"));
  } else if (kind == "fbdd") {
    if (j.contains("subsets")) {
      for (const auto &s: j.at("subsets"))
        for (const auto &t: s.at("scaffolds")) {
          std::string ids;
          for (int i: s.at("subset"))
            ids += (ids.empty() ? "" : ",") + std::to_string(i);
          out << ids << '\t' << t.at("scaffold").get<std::string>() << '\n';
        }
    } else {
      print_scaffold_rows(out, j.at("scaffolds"));
    }
  }
}

void require_args(const QueryArgs &a, std::size_t n, const std::string &kind) {
  if (a.args.size() != n)
    throw CLI::ValidationError(kind, "expects " + std::to_string(n) +
                                         " argument(s)");
}

int run_query(const std::string &kind, const QueryArgs &a, std::ostream &out) {
  if (a.format != "json" && a.format != "tsv")
    throw CLI::ValidationError("--format", "must be json or tsv");
  Json result;
  if (kind == "scaffold" && a.index.empty()) {
    require_args(a, 1, kind);
    const Scaffold s = scaffold_key(a.args[0]);
    result = { { "scaffold", s.key }, { "ring_count", s.ring_count } };
  } else if (kind == "mcs" && a.index.empty()) {
    require_args(a, 2, kind);
    HypergraphIndex empty;
    result = QueryService(empty).mcs(a.args[0], a.args[1], a.budget);
  } else {
    if (a.index.empty())
      throw CLI::RequiredError("--index");
    const HypergraphIndex idx = load_index(a.index);
    const QueryService service(idx);
    const ConeCaps caps { a.max_depth, a.max_size };
    const std::size_t offset = cursor_offset(a.cursor);
    if (a.limit == 0 || a.limit > kMaxPageLimit)
      throw CLI::ValidationError("--limit", "must be in 1.." +
                                                std::to_string(kMaxPageLimit));
    if (kind == "scaffold") {
      require_args(a, 1, kind);
      result = service.scaffold_summary(a.args[0]);
    } else if (kind == "expand") {
      require_args(a, 1, kind);
      result = service.expand(a.args[0], a.limit, offset);
    } else if (kind == "successors" || kind == "predecessors") {
      require_args(a, 1, kind);
      result = service.neighbors(a.args[0], kind == "successors");
    } else if (kind == "uppercone" || kind == "lowercone") {
      require_args(a, 1, kind);
      result = service.cone(a.args[0], kind == "uppercone", caps, a.limit,
                            offset);
    } else if (kind == "mcs") {
      require_args(a, 2, kind);
      result = service.mcs(a.args[0], a.args[1], a.budget);
    } else if (kind == "union") {
      require_args(a, 2, kind);
      result = service.union_of(a.args[0], a.args[1]);
    } else if (kind == "fbdd") {
      if (a.args.empty())
        throw CLI::ValidationError("fbdd", "expects at least one hit");
      std::optional<std::vector<int>> subset;
      if (!a.subset.empty())
        subset = a.subset;
      result = service.fbdd(a.args, subset, a.search, a.min_subset_size, caps);
    }
  }
  if (a.format == "json")
    out << result.dump(2) << '\n';
  else
    print_tsv(out, kind, result);
  return 0;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err) {
  CLI::App app { "Scaffold-class index and navigation engine", "scafnav" };
  app.require_subcommand(1);

  // ingest
  std::vector<std::string> inputs;
  std::string ingest_out;
  IngestOptions ingest_opts;
  auto *ingest = app.add_subcommand("ingest", "Build an index from .smi files");
  ingest->add_option("--input", inputs, "Input .smi file(s)")->required();
  ingest->add_option("--out", ingest_out, "Index directory")->required();
  ingest->add_option("--workers", ingest_opts.workers,
                     "Worker threads (0: all cores)");
  ingest->add_flag("--keep-largest-fragment,!--no-keep-largest-fragment",
                   ingest_opts.params.keep_largest_fragment,
                   "Keep the largest component of multi-fragment inputs "
                   "(default) or reject them");
  ingest->add_option("--max-fragment-rings",
                     ingest_opts.params.max_fragment_rings,
                     "Do not fragment scaffolds with more rings");

  // stats
  std::string stats_index, stats_format = "json";
  StatsOptions stats_opts;
  auto *stats = app.add_subcommand("stats", "Corpus statistics");
  stats->add_option("--index", stats_index, "Index directory")->required();
  stats->add_option("--format", stats_format, "json or tsv")
      ->check(CLI::IsMember({ "json", "tsv" }));
  stats->add_option("--tail-cutoff", stats_opts.tail_cutoff,
                    "Smallest class size in the tail fit");
  stats->add_option("--top-k", stats_opts.top_k,
                    "Scaffolds listed per hierarchy level");
  stats->add_option("--seed", stats_opts.seed,
                    "Seed of the minimal-degree sample");

  // query
  auto *query = app.add_subcommand("query", "Query an index");
  query->require_subcommand(1);
  QueryArgs qa;
  std::string query_kind;
  const std::pair<const char *, const char *> kinds[] = {
    { "scaffold", "Scaffold class of a molecule" },
    { "expand", "Members of a scaffold class" },
    { "successors", "Immediate successors of a scaffold" },
    { "predecessors", "Immediate predecessors of a scaffold" },
    { "uppercone", "All scaffolds above a scaffold" },
    { "lowercone", "All scaffolds below a scaffold" },
    { "mcs", "Maximum common substructure of two scaffolds" },
    { "union", "Scaffolds with both inputs as immediate predecessors" },
    { "fbdd", "Intersection of the upper cones of fragment hits" },
  };
  for (const auto &[name, help]: kinds) {
    auto *sub = query->add_subcommand(name, help);
    sub->add_option("args", qa.args, "Scaffold keys or SMILES");
    sub->add_option("--index", qa.index, "Index directory");
    sub->add_option("--format", qa.format, "json or tsv");
    sub->add_option("--limit", qa.limit, "Page size");
    sub->add_option("--cursor", qa.cursor, "Page cursor from a previous call");
    sub->add_option("--max-depth", qa.max_depth, "Cone depth cap");
    sub->add_option("--max-size", qa.max_size, "Cone size cap");
    if (std::string_view(name) == "mcs")
      sub->add_option("--budget", qa.budget, "Search expansion budget");
    if (std::string_view(name) == "fbdd") {
      sub->add_option("--subset", qa.subset, "Hit indices to intersect")
          ->delimiter(',');
      sub->add_flag("--search", qa.search, "Enumerate maximal hit subsets");
      sub->add_option("--min-subset-size", qa.min_subset_size,
                      "Smallest subset reported by --search");
    }
    sub->callback([&query_kind, name] { query_kind = name; });
  }

  // export-pairs
  std::string export_index, export_kind, export_out;
  ExportOptions export_opts;
  bool export_verify = false;
  auto *exp = app.add_subcommand("export-pairs", "Write training pairs");
  exp->add_option("--index", export_index, "Index directory")->required();
  exp->add_option("--kind", export_kind, "scaffold, successor or predecessor")
      ->required();
  exp->add_option("--augment", export_opts.augment,
                  "Randomized renderings per pair")
      ->check(CLI::PositiveNumber);
  exp->add_option("--seed", export_opts.seed, "Randomization seed");
  exp->add_option("--out", export_out, "Pair file")->required();
  exp->add_option("--holdout-fraction", export_opts.holdout_fraction,
                  "Share of scaffold classes written to <out>.holdout")
      ->check(CLI::Range(0.0, 1.0));
  exp->add_option("--workers", export_opts.workers, "Worker threads");
  exp->add_flag("--verify", export_verify,
                "Re-check every written pair against the index");

  // serve
  std::string serve_index, bind_addr = "127.0.0.1";
  int port = 8080;
  auto *srv = app.add_subcommand("serve", "Serve the /v1 HTTP API");
  srv->add_option("--index", serve_index, "Index directory")->required();
  srv->add_option("--port", port, "TCP port")->required();
  srv->add_option("--bind", bind_addr, "Listen address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (*ingest) {
      std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
      const IngestResult r = ingest_files(paths, ingest_opts);
      save_index(r.index, ingest_out);
      out << report_json(r.report);
      return 0;
    }
    if (*stats) {
      const HypergraphIndex idx = load_index(stats_index);
      const CorpusStats s = compute_stats(idx, stats_opts);
      out << (stats_format == "json" ? stats_json(s) : stats_tsv(s));
      return 0;
    }
    if (*query)
      return run_query(query_kind, qa, out);
    if (*exp) {
      ExportOptions o = export_opts;
      o.kind = parse_pair_kind(export_kind);
      const HypergraphIndex idx = load_index(export_index);
      const ExportResult r = export_pairs(idx, o);
      auto write = [](const std::string &path,
                      const std::vector<TrainingPair> &pairs) {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
          throw Error(ErrorCode::kIoError, "cannot write " + path);
        write_pairs(f, pairs);
        if (!f)
          throw Error(ErrorCode::kIoError, "write failed for " + path);
      };
      write(export_out, r.pairs);
      if (o.holdout_fraction > 0)
        write(export_out + ".holdout", r.holdout);
      Json summary { { "kind", pair_kind_name(o.kind) },
                     { "augment", o.augment },
                     { "seed", o.seed },
                     { "pairs", r.pairs.size() },
                     { "holdout_pairs", r.holdout.size() } };
      if (export_verify) {
        const PairCheck c = verify_pairs(idx, r.pairs);
        summary["verified"] = c.verified;
        summary["failures"] = c.failures;
        if (c.verified != c.lines) {
          out << summary.dump(2) << '\n';
          err << "error: " << (c.lines - c.verified)
              << " pairs failed verification\n";
          return 2;
        }
      }
      out << summary.dump(2) << '\n';
      return 0;
    }
    if (*srv) {
      const HypergraphIndex idx = load_index(serve_index);
      const QueryService service(idx);
      err << "serving on " << bind_addr << ':' << port << '\n';
      serve(service, bind_addr, port);
      return 0;
    }
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  err << app.help();
  return 1;
}

}  // namespace scafnav
