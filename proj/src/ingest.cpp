#include "scafnav/ingest.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "internal/parallel.h"

namespace scafnav {
namespace {

using Clock = std::chrono::steady_clock;

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front()))
    s.remove_prefix(1);
  while (!s.empty() && is_space(s.back()))
    s.remove_suffix(1);
  return s;
}

struct Chunk {
  std::vector<std::string> lines;
  std::vector<std::int64_t> line_nos;
};

void flush(Chunk &chunk, IndexBuilder &builder, const IngestOptions &options) {
  const std::size_t n = chunk.lines.size();
  std::vector<std::string_view> smiles(n), tags(n);
  for (std::size_t i = 0; i < n; ++i)
    parse_smi_line(chunk.lines[i], &smiles[i], &tags[i]);
  std::vector<PreparedMolecule> prepared(n);
  detail::parallel_for(n, options.workers, [&](std::size_t i) {
    prepared[i] = prepare_molecule(smiles[i], builder.params());
  });
  for (std::size_t i = 0; i < n; ++i)
    builder.insert_prepared(prepared[i], smiles[i], tags[i],
                            chunk.line_nos[i]);
  chunk.lines.clear();
  chunk.line_nos.clear();
}

IngestReport make_report(const IndexBuilder &builder) {
  IngestReport r;
  r.lines_read = builder.records();
  r.added = builder.added();
  r.duplicates = builder.duplicates();
  for (const auto &rej: builder.rejects())
    ++r.rejects[rej.reason];
  return r;
}

template <class Feed>
IngestResult run(const IngestOptions &options, Feed &&feed) {
  const auto t0 = Clock::now();
  IndexBuilder builder(options.params);
  std::int64_t line_no = 0;
  feed(builder, &line_no);
  IngestReport report = make_report(builder);
  const auto t1 = Clock::now();
  HypergraphIndex index = std::move(builder).build_graph(options.workers);
  const auto t2 = Clock::now();
  report.ingest_seconds = std::chrono::duration<double>(t1 - t0).count();
  report.build_seconds = std::chrono::duration<double>(t2 - t1).count();
  const double total = report.ingest_seconds + report.build_seconds;
  report.throughput =
      total > 0 ? static_cast<double>(report.lines_read) / total : 0.0;
  return { std::move(index), std::move(report) };
}

}  // namespace

std::int64_t IngestReport::rejected() const {
  std::int64_t n = 0;
  for (const auto &[reason, count]: rejects)
    n += count;
  return n;
}

bool parse_smi_line(std::string_view line, std::string_view *smiles,
                    std::string_view *tag) {
  line = trim(line);
  if (line.empty() || line.front() == '#')
    return false;
  std::size_t cut = 0;
  while (cut < line.size() && !is_space(line[cut]))
    ++cut;
  *smiles = line.substr(0, cut);
  *tag = trim(line.substr(cut));
  return true;
}

void ingest_stream(std::istream &in, IndexBuilder &builder,
                   const IngestOptions &options, std::int64_t *line_no) {
  Chunk chunk;
  const std::size_t chunk_lines = std::max<std::size_t>(options.chunk_lines, 1);
  std::string line;
  while (std::getline(in, line)) {
    ++*line_no;
    std::string_view smiles, tag;
    if (!parse_smi_line(line, &smiles, &tag))
      continue;
    chunk.lines.push_back(std::move(line));
    chunk.line_nos.push_back(*line_no);
    if (chunk.lines.size() >= chunk_lines)
      flush(chunk, builder, options);
  }
  if (in.bad())
    throw Error(ErrorCode::kIoError, "read error");
  flush(chunk, builder, options);
}

IngestResult ingest_files(const std::vector<std::filesystem::path> &inputs,
                          const IngestOptions &options) {
  return run(options, [&](IndexBuilder &builder, std::int64_t *line_no) {
    for (const auto &path: inputs) {
      std::ifstream in(path);
      if (!in)
        throw Error(ErrorCode::kIoError, "cannot open " + path.string());
      ingest_stream(in, builder, options, line_no);
    }
  });
}

IngestResult ingest_text(std::string_view text, const IngestOptions &options) {
  return run(options, [&](IndexBuilder &builder, std::int64_t *line_no) {
    std::istringstream in { std::string(text) };
    ingest_stream(in, builder, options, line_no);
  });
}

std::string report_json(const IngestReport &r) {
  nlohmann::ordered_json j;
  j["lines_read"] = r.lines_read;
  j["added"] = r.added;
  j["duplicates"] = r.duplicates;
  j["rejects"] = nlohmann::ordered_json::object();
  for (const auto &[reason, count]: r.rejects)
    j["rejects"][reason] = count;
  j["ingest_seconds"] = r.ingest_seconds;
  j["build_seconds"] = r.build_seconds;
  j["throughput_per_second"] = r.throughput;
  return j.dump(2) + "\n";
}

}  // namespace scafnav
