#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "corpus_gen.h"

int main(int argc, char **argv) {
  CLI::App app { "Write a synthetic .smi corpus", "gen_corpus" };
  scafnav::corpus::CorpusOptions options;
  std::string out_path;
  bool clean = false;
  app.add_option("--count", options.count, "Number of records")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", options.seed, "Generator seed");
  app.add_option("--out", out_path, "Output file (default stdout)");
  app.add_flag("--clean", clean, "No comments, salts, duplicates or bad lines");
  CLI11_PARSE(app, argc, argv);
  options.noise = !clean;
  if (out_path.empty()) {
    scafnav::corpus::write_corpus(std::cout, options);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return 1;
  }
  scafnav::corpus::write_corpus(out, options);
  return out ? 0 : 1;
}
