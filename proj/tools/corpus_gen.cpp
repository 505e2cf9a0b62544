#include "corpus_gen.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "scafnav/smiles.h"

namespace scafnav::corpus {
namespace {

// Ring blocks. The first atom bonds to the parent; X and Y are ring-closure
// labels; every "(@)" is an attachment site.
const char *const kRings[] = {
  "cXcc(@)c(@)ccX",        // benzene
  "cXcc(@)cncX",           // pyridine
  "NXCCC(@)CCX",           // piperidine
  "cXccc(@)sX",            // thiophene
  "NXCCN(@)CCX",           // piperazine
  "CXCCC(@)CCX",           // cyclohexane
  "cXcnc(@)ncX",           // pyrimidine
  "NXCCOCCX",              // morpholine
  "NXCCC(@)CX",            // pyrrolidine
  "cXccc(@)oX",            // furan
  "cXcccYc(@)ccccYcX",     // naphthalene
  "cXcsc(@)nX",            // thiazole
  "CXC(@)CX",              // cyclopropane
  "cXcccY[nH]c(@)ccYcX",   // indole
  "cXcnc[nH]X",            // imidazole
  "NXCCCCCCX",             // azepane
  "cXcccYncc(@)ccYcX",     // quinoline
  "CXCCC(@)CX",            // cyclopentane
  "cXcoc(@)nX",            // oxazole
  "cXcccYnc(@)[nH]cYcX",   // benzimidazole
  "CXCCOCX",               // tetrahydrofuran
  "cXcn[nH]cX",            // pyrazole
  "CXCCcYcc(@)cccYCX",     // tetralin
  "CXCCC(=O)C(@)CX",       // cyclohexanone
  "cXc(@)c[nH]cX",         // pyrrole
  "NXC(=O)CCC(@)CX",       // piperidinone
  "CXCOC(@)COX",           // dioxane
  "cXcccYOCOcYcX",         // benzodioxole
};

const char *const kLinkers[] = {
  "",    "C",      "CC",        "C(=O)N", "O",       "N",   "S(=O)(=O)",
  "CO",  "NC(=O)", "S(=O)(=O)N", "CCC",   "NC(=O)N", "OCC", "C=C",
  "CN",  "C(=O)",  "CCN",       "SC",
};

const char *const kSideChains[] = {
  "C",        "F",       "Cl",     "OC",          "CC",    "N",
  "O",        "C(=O)O",  "C#N",    "C(F)(F)F",    "Br",    "N(C)C",
  "C(=O)N",   "CC(C)C",  "C(C)=O", "S(=O)(=O)N",  "OCC",   "[N+](=O)[O-]",
  "C(=O)OC",  "CO",      "NC(C)=O", "I",
};

// Ends in an atom that can take one more bond.
const char *const kPrefixes[] = {
  "C", "CC", "CO", "CC(=O)N", "CN", "O=C(O)", "NC(=O)", "FC(F)(F)", "N#C",
  "CS(=O)(=O)N", "CCOC(=O)",
};

const char *const kAcyclic[] = {
  "CCO",       "CC(C)CO",        "CCCCN",      "CC(=O)OCC",   "NCC(=O)O",
  "CC(C)C(N)C(=O)O", "CCN(CC)CC", "OCC(O)CO",  "CCCCCC(=O)O", "CC(C)=CCO",
};

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) { }
  std::uint64_t next() { return gen_(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Zipf-like pick over [0, n).
  std::size_t zipf(std::size_t n, double s) {
    double total = 0;
    for (std::size_t i = 0; i < n; ++i)
      total += 1.0 / std::pow(static_cast<double>(i + 1), s);
    double u = unit() * total;
    for (std::size_t i = 0; i < n; ++i) {
      u -= 1.0 / std::pow(static_cast<double>(i + 1), s);
      if (u <= 0)
        return i;
    }
    return n - 1;
  }

private:
  std::mt19937_64 gen_;
};

struct Unit {
  int ring = 0;
  std::vector<std::string> site_text;  // one per "(@)" in the template
  std::vector<int> site_child;         // child unit or -1
  std::vector<std::string> site_linker;
};

int count_sites(const std::string &t) {
  int n = 0;
  for (std::size_t p = t.find("(@)"); p != std::string::npos;
       p = t.find("(@)", p + 1))
    ++n;
  return n;
}

class Builder {
public:
  explicit Builder(std::uint64_t seed) : rng_(seed) { }

  std::string molecule(int max_rings) {
    if (rng_.unit() < 0.04)
      return kAcyclic[rng_.below(std::size(kAcyclic))];

    // Ring count: roughly normal around three, as in large virtual libraries.
    int rings = rng_.unit() < 0.12 ? 1 : 2;
    while (rings < max_rings && rng_.unit() < 0.55)
      ++rings;

    units_.clear();
    add_unit();
    for (int r = 1; r < rings; ++r) {
      std::vector<std::pair<int, int>> open;
      for (int u = 0; u < static_cast<int>(units_.size()); ++u)
        for (int s = 0; s < static_cast<int>(units_[u].site_child.size()); ++s)
          if (units_[u].site_child[s] < 0 && units_[u].site_text[s].empty())
            open.emplace_back(u, s);
      if (open.empty())
        break;
      const auto [u, s] = open[rng_.below(open.size())];
      const int child = add_unit();
      units_[u].site_child[s] = child;
      units_[u].site_linker[s] =
          kLinkers[rng_.zipf(std::size(kLinkers), 0.9)];
    }
    for (auto &unit: units_)
      for (std::size_t s = 0; s < unit.site_child.size(); ++s)
        if (unit.site_child[s] < 0 && rng_.unit() < 0.6)
          unit.site_text[s] = kSideChains[rng_.zipf(std::size(kSideChains), 0.7)];

    label_ = 10;
    std::string out;
    if (rng_.unit() < 0.5)
      out += kPrefixes[rng_.below(std::size(kPrefixes))];
    out += render(0);
    return out;
  }

private:
  int add_unit() {
    Unit u;
    u.ring = static_cast<int>(rng_.zipf(std::size(kRings), 1.1));
    const int sites = count_sites(kRings[u.ring]);
    u.site_text.assign(sites, "");
    u.site_child.assign(sites, -1);
    u.site_linker.assign(sites, "");
    units_.push_back(std::move(u));
    return static_cast<int>(units_.size()) - 1;
  }

  std::string render(int index) {
    const Unit unit = units_[index];
    const std::string x = "%" + std::to_string(label_++);
    const std::string y = "%" + std::to_string(label_++);
    const std::string t = kRings[unit.ring];
    std::string out;
    int site = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t.compare(i, 3, "(@)") == 0) {
        std::string inner;
        if (unit.site_child[site] >= 0)
          inner = unit.site_linker[site] + render(unit.site_child[site]);
        else
          inner = unit.site_text[site];
        if (!inner.empty())
          out += "(" + inner + ")";
        ++site;
        i += 2;
      } else if (t[i] == 'X') {
        out += x;
      } else if (t[i] == 'Y') {
        out += y;
      } else {
        out += t[i];
      }
    }
    return out;
  }

  Rng rng_;
  std::vector<Unit> units_;
  int label_ = 10;
};

}  // namespace

const std::vector<NamedMolecule> &known_drugs() {
  static const std::vector<NamedMolecule> drugs = {
    { "penicillin_g", kPenicillinG },
    { "piperacillin", kPiperacillin },
    { "ampicillin", "CC1(C(N2C(S1)C(C2=O)NC(=O)C(C3=CC=CC=C3)N)C(=O)O)C" },
    { "amoxicillin",
      "CC1(C(N2C(S1)C(C2=O)NC(=O)C(C3=CC=C(C=C3)O)N)C(=O)O)C" },
    { "aspirin", "CC(=O)OC1=CC=CC=C1C(=O)O" },
    { "ibuprofen", "CC(C)CC1=CC=C(C=C1)C(C)C(=O)O" },
    { "paracetamol", "CC(=O)NC1=CC=C(C=C1)O" },
    { "diazepam", "CN1C(=O)CN=C(C2=C1C=CC(=C2)Cl)C3=CC=CC=C3" },
    { "imatinib",
      "CC1=C(C=C(C=C1)NC(=O)C2=CC=C(C=C2)CN3CCN(CC3)C)NC4=NC=CC(=N4)"
      "C5=CN=CC=C5" },
    { "nicotine", "CN1CCCC1C2=CN=CC=C2" },
    { "haloperidol",
      "C1CN(CCC1(C2=CC=C(C=C2)Cl)O)CCCC(=O)C3=CC=C(C=C3)F" },
    { "fluoxetine", "CNCCC(C1=CC=CC=C1)OC2=CC=C(C=C2)C(F)(F)F" },
    { "sulfamethoxazole", "CC1=CC(=NO1)NS(=O)(=O)C2=CC=C(C=C2)N" },
    { "celecoxib",
      "CC1=CC=C(C=C1)C2=CC(=NN2C3=CC=C(C=C3)S(=O)(=O)N)C(F)(F)F" },
    { "metformin", "CN(C)C(=N)N=C(N)N" },
    { "sulfonyl_phenethylamine", "O=S(=O)(NCCc1ccccc1)c1ccccc1" },
    { "sulfonyl_azepane", "O=S(=O)(c1ccccc1)N1CCCCCC1" },
    { "sulfonyl_pyridine", "O=S(=O)(NS(=O)(=O)c1cccnc1)c1ccccc1" },
    { "benzyl_phenyl_ether", "c1ccc(COc2ccccc2)cc1" },
    { "pyridine", "c1ccncc1" },
  };
  return drugs;
}

std::string random_molecule(std::uint64_t seed, int max_rings) {
  return Builder(seed).molecule(max_rings);
}

std::vector<std::string> corpus_lines(const CorpusOptions &options) {
  std::vector<std::string> lines;
  Rng rng(options.seed ^ 0x5eed5eed5eedULL);
  if (options.noise)
    lines.push_back("# synthetic desk corpus, seed " +
                    std::to_string(options.seed));
  std::int64_t id = 0;
  auto tag = [&] { return "M" + std::to_string(++id); };
  const auto &drugs = known_drugs();
  const auto known = std::min<std::int64_t>(
      options.count, static_cast<std::int64_t>(drugs.size()));
  for (std::int64_t i = 0; i < known; ++i)
    lines.push_back(std::string(drugs[i].smiles) + "\t" + drugs[i].name);
  std::vector<std::string> made;
  while (static_cast<std::int64_t>(made.size()) < options.count - known) {
    std::string smi = random_molecule(rng.next());
    if (options.noise) {
      const double u = rng.unit();
      if (u < 0.004) {
        smi = smi.substr(0, smi.size() / 2);  // truncated record
      } else if (u < 0.02) {
        smi += rng.unit() < 0.5 ? ".Cl" : ".O";  // salt or hydrate
      } else if (u < 0.08 && !made.empty()) {
        const std::string &earlier = made[rng.below(made.size())];
        try {
          smi = randomize_smiles(parse_smiles(earlier), rng.next());
        } catch (const std::exception &) {
          smi = earlier;
        }
      }
      if (rng.unit() < 0.002)
        lines.emplace_back();
    }
    made.push_back(smi);
    lines.push_back(smi + "\t" + tag());
  }
  return lines;
}

void write_corpus(std::ostream &out, const CorpusOptions &options) {
  for (const auto &line: corpus_lines(options))
    out << line << '\n';
}

}  // namespace scafnav::corpus
