#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "corpus_gen.h"
#include "scafnav/canonical.h"
#include "scafnav/error.h"
#include "scafnav/export_pairs.h"
#include "scafnav/ingest.h"
#include "scafnav/scaffold.h"
#include "support.h"

using namespace scafnav;

TEST_SUITE("ingest") {

TEST_CASE("smi line grammar") {
  std::string_view smiles, tag;
  CHECK(parse_smi_line("CCO\tethanol", &smiles, &tag));
  CHECK(smiles == "CCO");
  CHECK(tag == "ethanol");
  CHECK(parse_smi_line("  c1ccccc1  benzene ring\r", &smiles, &tag));
  CHECK(smiles == "c1ccccc1");
  CHECK(tag == "benzene ring");
  CHECK(parse_smi_line("CC", &smiles, &tag));
  CHECK(tag.empty());
  CHECK_FALSE(parse_smi_line("# comment", &smiles, &tag));
  CHECK_FALSE(parse_smi_line("   ", &smiles, &tag));
  CHECK_FALSE(parse_smi_line("", &smiles, &tag));
}

TEST_CASE("empty input") {
  const IngestResult r = ingest_text("");
  CHECK(r.report.lines_read == 0);
  CHECK(r.report.added == 0);
  CHECK(r.report.duplicates == 0);
  CHECK(r.report.rejected() == 0);
  CHECK(r.index.molecules().empty());
  CHECK(r.index.scaffolds().size() == 1);
  CHECK(r.index.edges().empty());
}

TEST_CASE("one bad line among ten") {
  const std::string text =
      "CCO\ta\nc1ccccc1\tb\nc1ccncc1\tc\nC1CC\td\nCCN\te\n"
      "C1CCCCC1\tf\nCC(=O)O\tg\nc1ccc(COc2ccccc2)cc1\th\nCCCl\ti\nCCBr\tj\n";
  const IngestResult r = ingest_text(text);
  CHECK(r.report.lines_read == 10);
  CHECK(r.report.added == 9);
  CHECK(r.report.rejected() == 1);
  CHECK(r.report.rejects == std::map<std::string, std::int64_t> {
                                { "UnclosedRingBond", 1 } });
  REQUIRE(r.index.rejects().size() == 1);
  CHECK(r.index.rejects()[0].line_no == 4);
  CHECK(r.index.molecules()[0].source_tag == "a");
}

TEST_CASE("comments, blanks and duplicates") {
  const IngestResult r =
      ingest_text("# header\n\nCCO\nOCC dup\n\n# x\nc1ccccc1\n");
  CHECK(r.report.lines_read == 3);
  CHECK(r.report.added == 2);
  CHECK(r.report.duplicates == 1);
  CHECK(r.report.lines_read ==
        r.report.added + r.report.duplicates + r.report.rejected());
  CHECK(r.index.molecules()[0].source_tag.empty());
}

TEST_CASE("file inputs in order and unreadable files") {
  testing::TempDir dir;
  {
    std::ofstream(dir / "a.smi") << "c1ccccc1\tfirst\n";
    std::ofstream(dir / "b.smi") << "Cc1ccccc1\tsecond\nC1CC\tbad\n";
  }
  const IngestResult r = ingest_files({ dir / "a.smi", dir / "b.smi" });
  REQUIRE(r.index.molecules().size() == 2);
  CHECK(r.index.molecules()[0].source_tag == "first");
  CHECK(r.index.molecules()[1].source_tag == "second");
  REQUIRE(r.index.rejects().size() == 1);
  CHECK(r.index.rejects()[0].line_no == 3);
  CHECK_THROWS_AS(ingest_files({ dir / "missing.smi" }), Error);
}

TEST_CASE("worker count does not change the index") {
  scafnav::corpus::CorpusOptions o;
  o.count = 3000;
  o.seed = 77;
  std::ostringstream text;
  scafnav::corpus::write_corpus(text, o);
  IngestOptions one, many;
  one.workers = 1;
  many.workers = 4;
  many.chunk_lines = 97;
  const IngestResult a = ingest_text(text.str(), one);
  const IngestResult b = ingest_text(text.str(), many);
  CHECK(a.index == b.index);
  testing::TempDir da, db;
  save_index(a.index, da.path());
  save_index(b.index, db.path());
  for (const char *f: { "manifest.json", "molecules.tsv", "scaffolds.tsv",
                        "edges.tsv", "rejects.tsv" })
    CHECK(testing::read_file(da / f) == testing::read_file(db / f));
  CHECK(a.report.lines_read == a.report.added + a.report.duplicates +
                                   a.report.rejected());
}

TEST_CASE("report json") {
  const IngestResult r = ingest_text("CCO\nC1CC\n");
  const auto j = nlohmann::json::parse(report_json(r.report));
  CHECK(j["added"] == 1);
  CHECK(j["lines_read"] == 2);
}

}  // TEST_SUITE

TEST_SUITE("export") {

TEST_CASE("pair kinds") {
  CHECK(parse_pair_kind("scaffold") == PairKind::kScaffold);
  CHECK(parse_pair_kind("successor") == PairKind::kSuccessor);
  CHECK(parse_pair_kind("predecessor") == PairKind::kPredecessor);
  try {
    parse_pair_kind("sideways");
    FAIL("expected UnknownKind");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kUnknownKind);
  }
}

TEST_CASE("k=1 benzene corpus") {
  const auto idx = testing::build({ "Cc1ccccc1", "CCc1ccccc1" });
  ExportOptions o;
  o.seed = 3;
  const ExportResult r = export_pairs(idx, o);
  REQUIRE(r.pairs.size() == 2);
  for (const auto &p: r.pairs) {
    CHECK(canonicalize(p.target) == "c1ccccc1");
    CHECK(scaffold_key(p.source).key == "c1ccccc1");
  }
  const PairCheck c = verify_pairs(idx, r.pairs);
  CHECK(c.verified == 2);
}

TEST_CASE("augmentation multiplies lines") {
  const auto &idx = testing::desk().index;
  for (PairKind kind: { PairKind::kScaffold, PairKind::kSuccessor }) {
    ExportOptions o;
    o.kind = kind;
    o.seed = 9;
    const auto one = export_pairs(idx, o);
    o.augment = 5;
    const auto five = export_pairs(idx, o);
    CHECK(five.pairs.size() == 5 * one.pairs.size());
    const PairCheck c = verify_pairs(idx, five.pairs);
    CHECK(c.verified == c.lines);
    CHECK(c.lines == static_cast<std::int64_t>(five.pairs.size()));
  }
}

TEST_CASE("successor pairs cover each edge once per rendering") {
  const auto idx = testing::build({ "c1ccc(COc2ccccc2)cc1" });
  ExportOptions o;
  o.kind = PairKind::kSuccessor;
  const auto r = export_pairs(idx, o);
  REQUIRE(r.pairs.size() == 1);
  CHECK(canonicalize(r.pairs[0].source) == "c1ccccc1");
  CHECK(canonicalize(r.pairs[0].target) ==
        canonicalize("c1ccc(COc2ccccc2)cc1"));
}

TEST_CASE("predecessor file is the successor file with columns swapped") {
  const auto &idx = testing::desk().index;
  ExportOptions o;
  o.seed = 11;
  o.kind = PairKind::kSuccessor;
  const auto succ = export_pairs(idx, o);
  o.kind = PairKind::kPredecessor;
  const auto pred = export_pairs(idx, o);
  REQUIRE(succ.pairs.size() == pred.pairs.size());
  bool swapped = true;
  for (std::size_t i = 0; i < succ.pairs.size(); ++i)
    swapped = swapped && succ.pairs[i].source == pred.pairs[i].target &&
              succ.pairs[i].target == pred.pairs[i].source;
  CHECK(swapped);
  CHECK(verify_pairs(idx, pred.pairs).verified ==
        static_cast<std::int64_t>(pred.pairs.size()));
}

TEST_CASE("export is deterministic under a fixed seed") {
  const auto &idx = testing::desk().index;
  ExportOptions o;
  o.seed = 4;
  o.augment = 2;
  o.workers = 1;
  const auto a = export_pairs(idx, o);
  o.workers = 3;
  const auto b = export_pairs(idx, o);
  CHECK(a.pairs == b.pairs);
  o.seed = 5;
  CHECK(export_pairs(idx, o).pairs != a.pairs);
}

TEST_CASE("pair file round trip and verification failures") {
  const auto idx = testing::build({ "Cc1ccccc1", "c1ccc(COc2ccccc2)cc1" });
  ExportOptions o;
  o.augment = 3;
  const auto r = export_pairs(idx, o);
  std::stringstream buf;
  write_pairs(buf, r.pairs);
  const std::string text = buf.str();
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        static_cast<long>(r.pairs.size()));
  CHECK(text.find('\r') == std::string::npos);
  std::istringstream in(text);
  CHECK(read_pairs(in) == r.pairs);

  std::vector<TrainingPair> wrong = {
    { "Cc1ccccc1", "c1ccncc1", PairKind::kScaffold },
    { "c1ccc(COc2ccccc2)cc1", "c1ccccc1", PairKind::kSuccessor },
    { "C1CC", "c1ccccc1", PairKind::kScaffold },
  };
  const PairCheck c = verify_pairs(idx, wrong);
  CHECK(c.lines == 3);
  CHECK(c.verified == 0);
  CHECK_FALSE(c.failures.empty());

  std::istringstream bad("only-one-column\n");
  CHECK_THROWS_AS(read_pairs(bad), Error);
}

TEST_CASE("holdout splits whole classes") {
  const auto &idx = testing::desk().index;
  ExportOptions o;
  o.holdout_fraction = 0.2;
  o.seed = 1;
  const auto r = export_pairs(idx, o);
  CHECK(!r.holdout.empty());
  CHECK(r.pairs.size() + r.holdout.size() == idx.molecules().size());
  auto key = [](const TrainingPair &p) {
    return p.target.empty() ? p.target : canonicalize(p.target);
  };
  std::set<std::string> train, held;
  for (const auto &p: r.pairs)
    train.insert(key(p));
  for (const auto &p: r.holdout)
    held.insert(key(p));
  for (const auto &k: held)
    CHECK(train.count(k) == 0);
}

}  // TEST_SUITE
