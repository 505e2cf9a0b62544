#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "scafnav/index.h"

namespace scafnav {

struct IngestOptions {
  int workers = 0;  // 0: hardware concurrency
  std::size_t chunk_lines = 8192;
  BuildParams params;
};

struct IngestReport {
  std::int64_t lines_read = 0;  // records, comments and blanks excluded
  std::int64_t added = 0;
  std::int64_t duplicates = 0;
  std::map<std::string, std::int64_t> rejects;  // reason -> count
  double ingest_seconds = 0.0;
  double build_seconds = 0.0;
  double throughput = 0.0;  // records per second over ingest and build

  std::int64_t rejected() const;
};

// One record of a .smi line: `SMILES[<whitespace>id]`. Returns false for
// blank and comment lines.
bool parse_smi_line(std::string_view line, std::string_view *smiles,
                    std::string_view *tag);

// Streams records from `in` into `builder`, parsing in parallel chunks and
// inserting in input order. `line_no` counts physical lines and carries
// over between calls.
void ingest_stream(std::istream &in, IndexBuilder &builder,
                   const IngestOptions &options, std::int64_t *line_no);

struct IngestResult {
  HypergraphIndex index;
  IngestReport report;
};

// Reads every input in order and builds the sealed index. Throws
// Error(kIoError) for unreadable inputs.
IngestResult ingest_files(const std::vector<std::filesystem::path> &inputs,
                          const IngestOptions &options = {});
// Same, from in-memory text.
IngestResult ingest_text(std::string_view text,
                         const IngestOptions &options = {});

std::string report_json(const IngestReport &report);

}  // namespace scafnav
