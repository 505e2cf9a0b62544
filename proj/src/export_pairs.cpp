#include "scafnav/export_pairs.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include "internal/parallel.h"
#include "scafnav/canonical.h"
#include "scafnav/error.h"
#include "scafnav/smiles.h"

namespace scafnav {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                  std::uint64_t c) {
  return splitmix64(splitmix64(splitmix64(seed ^ a) ^ b) ^ c);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c: s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string render(const std::string &smiles, std::uint64_t seed) {
  if (smiles.empty())
    return {};
  return randomize_smiles(parse_smiles(smiles), seed);
}

bool held_out(std::string_view key, const ExportOptions &o) {
  if (o.holdout_fraction <= 0)
    return false;
  const double u = static_cast<double>(splitmix64(fnv1a(key) ^ o.seed) >> 11) *
                   0x1.0p-53;
  return u < o.holdout_fraction;
}

}  // namespace

PairKind parse_pair_kind(std::string_view name) {
  if (name == "scaffold")
    return PairKind::kScaffold;
  if (name == "successor")
    return PairKind::kSuccessor;
  if (name == "predecessor")
    return PairKind::kPredecessor;
  throw Error(ErrorCode::kUnknownKind,
              "unknown pair kind '" + std::string(name) +
                  "' (scaffold, successor, predecessor)");
}

std::string_view pair_kind_name(PairKind kind) {
  switch (kind) {
  case PairKind::kScaffold: return "scaffold";
  case PairKind::kSuccessor: return "successor";
  case PairKind::kPredecessor: return "predecessor";
  }
  return "scaffold";
}

ExportResult export_pairs(const HypergraphIndex &idx,
                          const ExportOptions &options) {
  if (options.augment < 1)
    throw Error(ErrorCode::kBadRequest, "augment factor must be >= 1");
  struct Item {
    const std::string *source;
    const std::string *target;
    const std::string *class_key;
  };
  std::vector<Item> items;
  if (options.kind == PairKind::kScaffold) {
    for (const auto &m: idx.molecules()) {
      const auto &key = idx.scaffold(m.scaffold_id).scaffold.key;
      items.push_back({ &m.canonical, &key, &key });
    }
  } else {
    for (const auto &[p, s]: idx.edges())
      items.push_back({ &idx.scaffold(p).scaffold.key,
                        &idx.scaffold(s).scaffold.key,
                        &idx.scaffold(s).scaffold.key });
  }

  const std::size_t k = static_cast<std::size_t>(options.augment);
  std::vector<TrainingPair> rendered(items.size() * k);
  detail::parallel_for(items.size(), options.workers, [&](std::size_t i) {
    for (std::size_t j = 0; j < k; ++j) {
      auto &pair = rendered[i * k + j];
      pair.source = render(*items[i].source, mix(options.seed, i, j, 0));
      pair.target = render(*items[i].target, mix(options.seed, i, j, 1));
      pair.kind = options.kind;
      if (options.kind == PairKind::kPredecessor)
        std::swap(pair.source, pair.target);
    }
  });

  ExportResult out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto &dest =
        held_out(*items[i].class_key, options) ? out.holdout : out.pairs;
    for (std::size_t j = 0; j < k; ++j)
      dest.push_back(std::move(rendered[i * k + j]));
  }
  return out;
}

void write_pairs(std::ostream &out, const std::vector<TrainingPair> &pairs) {
  for (const auto &p: pairs)
    out << p.source << '\t' << p.target << '\t' << pair_kind_name(p.kind)
        << '\n';
}

std::vector<TrainingPair> read_pairs(std::istream &in) {
  std::vector<TrainingPair> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto a = line.find('\t');
    const auto b = a == std::string::npos ? a : line.find('\t', a + 1);
    if (b == std::string::npos)
      throw Error(ErrorCode::kIoError, "pair line without 3 columns: " + line);
    out.push_back({ line.substr(0, a), line.substr(a + 1, b - a - 1),
                    parse_pair_kind(line.substr(b + 1)) });
  }
  return out;
}

PairCheck verify_pairs(const HypergraphIndex &idx,
                       const std::vector<TrainingPair> &pairs) {
  std::set<std::pair<int, int>> edges(idx.edges().begin(), idx.edges().end());
  std::vector<char> ok(pairs.size(), 0);
  detail::parallel_for(pairs.size(), 0, [&](std::size_t i) {
    const auto &p = pairs[i];
    try {
      if (p.kind == PairKind::kScaffold) {
        const std::string target =
            p.target.empty() ? std::string() : canonicalize(p.target);
        ok[i] = scaffold_key(p.source).key == target && idx.find(target);
        return;
      }
      const std::string src = canonicalize(p.source);
      const std::string dst = canonicalize(p.target);
      const auto a = idx.find(src), b = idx.find(dst);
      if (!a || !b)
        return;
      ok[i] = p.kind == PairKind::kSuccessor ? edges.contains({ *a, *b })
                                             : edges.contains({ *b, *a });
    } catch (const Error &) {
      ok[i] = 0;
    }
  });
  PairCheck check;
  check.lines = static_cast<std::int64_t>(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (ok[i]) {
      ++check.verified;
    } else if (check.failures.size() < 20) {
      check.failures.push_back(pairs[i].source + '\t' + pairs[i].target +
                               '\t' +
                               std::string(pair_kind_name(pairs[i].kind)));
    }
  }
  return check;
}

}  // namespace scafnav
