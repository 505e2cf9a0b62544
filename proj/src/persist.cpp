#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <zlib.h>

#include "scafnav/index.h"

namespace scafnav {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char *kManifest = "manifest.json";
constexpr const char *kMolecules = "molecules.tsv";
constexpr const char *kScaffolds = "scaffolds.tsv";
constexpr const char *kEdges = "edges.tsv";
constexpr const char *kRejects = "rejects.tsv";

std::string crc32_hex(const std::string &data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef *>(data.data()),
              static_cast<uInt>(data.size()));
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

std::string clean_field(std::string_view s) {
  std::string out(s);
  for (char &c: out)
    if (c == '\t' || c == '\n' || c == '\r')
      c = ' ';
  return out;
}

void write_file(const fs::path &path, const std::string &data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.close();
  if (!out)
    throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json manifest_object(const Manifest &m) {
  json j;
  j["format_version"] = m.format_version;
  j["counts"] = {
    { "records", m.records },
    { "molecules", m.molecules },
    { "duplicates", m.duplicates },
    { "rejects", m.rejects },
    { "scaffolds", m.scaffolds },
    { "virtual_scaffolds", m.virtual_scaffolds },
    { "edges", m.edges },
    { "max_level", m.max_level },
  };
  j["build_params"] = {
    { "keep_largest_fragment", m.params.keep_largest_fragment },
    { "max_fragment_rings", m.params.max_fragment_rings },
  };
  j["budget_exceeded"] = m.budget_exceeded;
  return j;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <class T>
T to_number(std::string_view s, const std::string &file) {
  T value {};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::kIoError,
                file + ": bad number '" + std::string(s) + "'");
  return value;
}

// Calls fn(fields) for each LF-terminated line.
template <class Fn>
void for_each_row(const std::string &data, std::size_t columns,
                  const std::string &file, Fn &&fn) {
  std::size_t start = 0;
  while (start < data.size()) {
    const auto end = data.find('\n', start);
    if (end == std::string::npos)
      throw Error(ErrorCode::kIoError, file + ": unterminated last line");
    const auto fields =
        split_tabs(std::string_view(data).substr(start, end - start));
    if (fields.size() != columns)
      throw Error(ErrorCode::kIoError, file + ": expected " +
                                           std::to_string(columns) +
                                           " columns");
    fn(fields);
    start = end + 1;
  }
}

}  // namespace

std::string manifest_json(const Manifest &m) {
  return manifest_object(m).dump(2);
}

Manifest save_index(const HypergraphIndex &idx, const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw Error(ErrorCode::kIoError,
                "cannot create " + dir.string() + ": " + ec.message());

  std::string molecules;
  for (const auto &m: idx.molecules()) {
    molecules += std::to_string(m.id);
    molecules += '\t';
    molecules += m.canonical;
    molecules += '\t';
    molecules += std::to_string(m.scaffold_id);
    molecules += '\t';
    molecules += clean_field(m.source_tag);
    molecules += '\n';
  }
  std::string scaffolds;
  for (const auto &c: idx.scaffolds()) {
    scaffolds += std::to_string(c.scaffold_id);
    scaffolds += '\t';
    scaffolds += c.scaffold.key;
    scaffolds += '\t';
    scaffolds += std::to_string(c.scaffold.ring_count);
    scaffolds += c.scaffold.is_virtual ? "\t1\t" : "\t0\t";
    scaffolds += std::to_string(c.members.size());
    scaffolds += '\n';
  }
  std::string edges;
  for (const auto &[p, s]: idx.edges()) {
    edges += std::to_string(p);
    edges += '\t';
    edges += std::to_string(s);
    edges += '\n';
  }
  std::string rejects;
  for (const auto &r: idx.rejects()) {
    rejects += std::to_string(r.line_no);
    rejects += '\t';
    rejects += clean_field(r.reason);
    rejects += '\t';
    rejects += clean_field(r.raw_text);
    rejects += '\n';
  }

  json manifest = manifest_object(idx.manifest());
  const std::pair<const char *, const std::string *> files[] = {
    { kMolecules, &molecules },
    { kScaffolds, &scaffolds },
    { kEdges, &edges },
    { kRejects, &rejects },
  };
  for (const auto &[name, data]: files) {
    write_file(dir / name, *data);
    manifest["files"][name] = { { "crc32", crc32_hex(*data) },
                                { "bytes", data->size() } };
  }
  write_file(dir / kManifest, manifest.dump(2) + "\n");
  return idx.manifest();
}

HypergraphIndex load_index(const fs::path &dir) {
  const auto manifest_path = dir / kManifest;
  if (!fs::exists(manifest_path))
    throw Error(ErrorCode::kIoError, "no index at " + dir.string());
  json j;
  try {
    j = json::parse(read_file(manifest_path));
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kIoError,
                "manifest.json does not parse: " + std::string(e.what()));
  }

  Manifest m;
  try {
    m.format_version = j.at("format_version").get<int>();
    if (m.format_version != kIndexFormatVersion)
      throw Error(ErrorCode::kFormatVersionMismatch,
                  "index format " + std::to_string(m.format_version) +
                      ", expected " + std::to_string(kIndexFormatVersion));
    const auto &c = j.at("counts");
    m.records = c.at("records").get<std::int64_t>();
    m.duplicates = c.at("duplicates").get<std::int64_t>();
    m.params.keep_largest_fragment =
        j.at("build_params").at("keep_largest_fragment").get<bool>();
    m.params.max_fragment_rings =
        j.at("build_params").at("max_fragment_rings").get<int>();
    m.budget_exceeded =
        j.at("budget_exceeded").get<std::vector<std::string>>();
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kIoError,
                "manifest.json is malformed: " + std::string(e.what()));
  }

  auto load_checked = [&](const char *name) {
    const std::string data = read_file(dir / name);
    std::string crc;
    std::size_t bytes = 0;
    try {
      const auto &f = j.at("files").at(name);
      crc = f.at("crc32").get<std::string>();
      bytes = f.at("bytes").get<std::size_t>();
    } catch (const json::exception &) {
      throw Error(ErrorCode::kIoError,
                  std::string("manifest has no checksum for ") + name);
    }
    if (data.size() != bytes || crc32_hex(data) != crc)
      throw Error(ErrorCode::kChecksumMismatch,
                  std::string(name) + " does not match its checksum");
    return data;
  };

  std::vector<MoleculeRecord> molecules;
  for_each_row(load_checked(kMolecules), 4, kMolecules, [&](const auto &f) {
    MoleculeRecord r;
    r.id = to_number<int>(f[0], kMolecules);
    if (r.id != static_cast<int>(molecules.size()))
      throw Error(ErrorCode::kIoError, "molecules.tsv ids are not dense");
    r.canonical = std::string(f[1]);
    r.scaffold_id = to_number<int>(f[2], kMolecules);
    r.source_tag = std::string(f[3]);
    molecules.push_back(std::move(r));
  });

  std::vector<ScaffoldClass> scaffolds;
  std::vector<std::size_t> member_counts;
  for_each_row(load_checked(kScaffolds), 5, kScaffolds, [&](const auto &f) {
    ScaffoldClass c;
    c.scaffold_id = to_number<int>(f[0], kScaffolds);
    if (c.scaffold_id != static_cast<int>(scaffolds.size()))
      throw Error(ErrorCode::kIoError, "scaffolds.tsv ids are not dense");
    c.scaffold.key = std::string(f[1]);
    c.scaffold.ring_count = to_number<int>(f[2], kScaffolds);
    c.scaffold.is_virtual = f[3] == "1";
    member_counts.push_back(to_number<std::size_t>(f[4], kScaffolds));
    scaffolds.push_back(std::move(c));
  });

  std::vector<std::pair<int, int>> edges;
  for_each_row(load_checked(kEdges), 2, kEdges, [&](const auto &f) {
    edges.emplace_back(to_number<int>(f[0], kEdges),
                       to_number<int>(f[1], kEdges));
  });

  std::vector<RejectRecord> rejects;
  for_each_row(load_checked(kRejects), 3, kRejects, [&](const auto &f) {
    rejects.push_back({ to_number<std::int64_t>(f[0], kRejects),
                        std::string(f[1]), std::string(f[2]) });
  });

  HypergraphIndex idx =
      assemble_index(std::move(molecules), std::move(scaffolds),
                     std::move(edges), std::move(rejects), std::move(m));
  for (std::size_t i = 0; i < member_counts.size(); ++i)
    if (idx.scaffold(static_cast<int>(i)).members.size() != member_counts[i])
      throw Error(ErrorCode::kIoError,
                  "scaffolds.tsv member count disagrees with molecules.tsv");
  return idx;
}

}  // namespace scafnav
