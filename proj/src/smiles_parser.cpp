#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scafnav/error.h"
#include "scafnav/rings.h"
#include "scafnav/smiles.h"

namespace scafnav {
namespace {

struct PendingBond {
  BondOrder order = BondOrder::kSingle;
  bool explicit_order = false;
  bool directional = false;
};

struct OpenRing {
  int atom;
  PendingBond bond;
  bool has_bond_symbol;
};

[[noreturn]] void fail(ErrorCode code, std::string_view text, std::size_t pos,
                       std::string_view what) {
  throw Error(code, std::string(what) + " at position " +
                        std::to_string(pos) + " in '" + std::string(text) +
                        "'");
}

class Parser {
public:
  explicit Parser(std::string_view text): text_(text) { }

  MolGraph run();
  const std::vector<bool> &implicit_bonds() const { return implicit_bond_; }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void parse_organic_atom();
  void parse_bracket_atom();
  void attach_atom(const Atom &atom);
  void parse_ring_closure(int number);
  int read_int();

  std::string_view text_;
  std::size_t pos_ = 0;
  MolGraph g_;
  std::vector<bool> implicit_bond_;
  int prev_ = -1;
  std::optional<PendingBond> pending_;
  std::vector<int> branches_;
  std::map<int, OpenRing> rings_;
};

int Parser::read_int() {
  int value = 0;
  bool any = false;
  while (std::isdigit(static_cast<unsigned char>(peek()))) {
    value = value * 10 + (peek() - '0');
    ++pos_;
    any = true;
    if (value > 100000)
      fail(ErrorCode::kSyntaxError, text_, pos_, "number too large");
  }
  return any ? value : -1;
}

void Parser::attach_atom(const Atom &atom) {
  const int idx = g_.add_atom(atom);
  if (prev_ >= 0) {
    PendingBond b = pending_.value_or(PendingBond {});
    bool implicit = !pending_ || !pending_->explicit_order;
    if (implicit && atom.aromatic && g_.atom(prev_).aromatic)
      b.order = BondOrder::kAromatic;
    g_.add_bond(prev_, idx, b.order, b.directional);
    implicit_bond_.push_back(implicit);
  } else if (pending_) {
    fail(ErrorCode::kSyntaxError, text_, pos_, "bond without preceding atom");
  }
  pending_.reset();
  prev_ = idx;
}

void Parser::parse_organic_atom() {
  Atom atom;
  const char c = peek();
  if (c == 'C' && peek(1) == 'l') {
    atom.element = element::kCl;
    pos_ += 2;
  } else if (c == 'B' && peek(1) == 'r') {
    atom.element = element::kBr;
    pos_ += 2;
  } else {
    switch (c) {
    case 'B': atom.element = element::kB; break;
    case 'C': atom.element = element::kC; break;
    case 'N': atom.element = element::kN; break;
    case 'O': atom.element = element::kO; break;
    case 'P': atom.element = element::kP; break;
    case 'S': atom.element = element::kS; break;
    case 'F': atom.element = element::kF; break;
    case 'I': atom.element = element::kI; break;
    case 'b': atom.element = element::kB; atom.aromatic = true; break;
    case 'c': atom.element = element::kC; atom.aromatic = true; break;
    case 'n': atom.element = element::kN; atom.aromatic = true; break;
    case 'o': atom.element = element::kO; atom.aromatic = true; break;
    case 'p': atom.element = element::kP; atom.aromatic = true; break;
    case 's': atom.element = element::kS; atom.aromatic = true; break;
    default:
      fail(ErrorCode::kUnsupportedElement, text_, pos_,
           std::string("unsupported atom '") + c + "'");
    }
    ++pos_;
  }
  attach_atom(atom);
}

void Parser::parse_bracket_atom() {
  const std::size_t start = pos_;
  ++pos_;  // '['
  Atom atom;
  atom.explicit_h = 0;

  if (std::isdigit(static_cast<unsigned char>(peek()))) {
    const int iso = read_int();
    if (iso <= 0)
      fail(ErrorCode::kSyntaxError, text_, pos_, "bad isotope");
    atom.isotope = iso;
  }

  // Element symbol.
  const char c = peek();
  if (c == '*') {
    fail(ErrorCode::kUnsupportedElement, text_, pos_, "wildcard atom");
  } else if (std::islower(static_cast<unsigned char>(c))) {
    atom.aromatic = true;
    std::string sym;
    if ((c == 's' && peek(1) == 'e') || (c == 'a' && peek(1) == 's')) {
      sym = { static_cast<char>(std::toupper(c)), peek(1) };
      pos_ += 2;
    } else {
      sym = std::string(1, static_cast<char>(std::toupper(c)));
      ++pos_;
    }
    const int z = element_from_symbol(sym);
    if (z == 0 || z == element::kH || z == element::kF ||
        z == element::kCl || z == element::kBr || z == element::kI ||
        z == element::kSi)
      fail(ErrorCode::kUnsupportedElement, text_, start,
           "unsupported aromatic element '" + sym + "'");
    atom.element = z;
  } else if (std::isupper(static_cast<unsigned char>(c))) {
    std::string sym(1, c);
    ++pos_;
    if (std::islower(static_cast<unsigned char>(peek()))) {
      sym += peek();
      ++pos_;
    }
    const int z = element_from_symbol(sym);
    if (z == 0)
      fail(ErrorCode::kUnsupportedElement, text_, start,
           "unsupported element '" + sym + "'");
    atom.element = z;
  } else {
    fail(ErrorCode::kSyntaxError, text_, pos_, "missing element symbol");
  }

  // Chirality.
  if (peek() == '@') {
    ++pos_;
    atom.chirality = Chirality::kCounterClockwise;
    if (peek() == '@') {
      ++pos_;
      atom.chirality = Chirality::kClockwise;
    } else if (std::isupper(static_cast<unsigned char>(peek())) &&
               std::isupper(static_cast<unsigned char>(peek(1)))) {
      // @TH1, @AL2, @SP3, @TB10, @OH20 ...
      pos_ += 2;
      if (read_int() < 0)
        fail(ErrorCode::kSyntaxError, text_, pos_, "bad chirality class");
    }
  }

  if (peek() == 'H') {
    ++pos_;
    const int h = read_int();
    atom.explicit_h = h < 0 ? 1 : h;
  }

  if (peek() == '+' || peek() == '-') {
    const char sign = peek();
    ++pos_;
    int magnitude = 1;
    if (peek() == sign) {
      while (peek() == sign) {
        ++magnitude;
        ++pos_;
      }
    } else {
      const int m = read_int();
      if (m >= 0)
        magnitude = m;
    }
    if (magnitude > 8)
      fail(ErrorCode::kSyntaxError, text_, pos_, "charge out of range");
    atom.formal_charge = sign == '+' ? magnitude : -magnitude;
  }

  if (peek() == ':') {
    ++pos_;
    if (read_int() < 0)
      fail(ErrorCode::kSyntaxError, text_, pos_, "bad atom class");
  }

  if (peek() != ']')
    fail(ErrorCode::kSyntaxError, text_, pos_, "unterminated bracket atom");
  ++pos_;
  attach_atom(atom);
}

void Parser::parse_ring_closure(int number) {
  if (prev_ < 0)
    fail(ErrorCode::kSyntaxError, text_, pos_, "ring closure without atom");
  const bool has_symbol = pending_.has_value();
  const PendingBond here = pending_.value_or(PendingBond {});
  pending_.reset();

  auto it = rings_.find(number);
  if (it == rings_.end()) {
    rings_.emplace(number, OpenRing { prev_, here, has_symbol });
    return;
  }
  const OpenRing open = it->second;
  rings_.erase(it);

  PendingBond b;
  bool implicit = true;
  if (has_symbol && open.has_bond_symbol && here.explicit_order &&
      open.bond.explicit_order && here.order != open.bond.order)
    fail(ErrorCode::kSyntaxError, text_, pos_,
         "conflicting ring closure bond orders");
  if (has_symbol && here.explicit_order) {
    b = here;
    implicit = false;
  } else if (open.has_bond_symbol && open.bond.explicit_order) {
    b = open.bond;
    implicit = false;
  } else {
    b.directional = here.directional || open.bond.directional;
  }
  if (implicit && g_.atom(open.atom).aromatic && g_.atom(prev_).aromatic)
    b.order = BondOrder::kAromatic;
  if (open.atom == prev_)
    fail(ErrorCode::kSyntaxError, text_, pos_, "ring bond to itself");
  if (g_.bond_between(open.atom, prev_))
    fail(ErrorCode::kSyntaxError, text_, pos_, "duplicate ring bond");
  g_.add_bond(open.atom, prev_, b.order, b.directional);
  implicit_bond_.push_back(implicit);
}

MolGraph Parser::run() {
  // Trim surrounding whitespace.
  while (!text_.empty() && std::isspace(static_cast<unsigned char>(text_.front())))
    text_.remove_prefix(1);
  while (!text_.empty() && std::isspace(static_cast<unsigned char>(text_.back())))
    text_.remove_suffix(1);
  if (text_.empty())
    throw Error(ErrorCode::kSyntaxError, "empty SMILES");

  bool branch_just_opened = false;
  while (!at_end()) {
    const char c = peek();
    if (c == '(') {
      if (prev_ < 0 || pending_)
        fail(ErrorCode::kSyntaxError, text_, pos_, "misplaced '('");
      branches_.push_back(prev_);
      branch_just_opened = true;
      ++pos_;
      continue;
    }
    if (c == ')') {
      if (branches_.empty() || branch_just_opened || pending_)
        fail(ErrorCode::kSyntaxError, text_, pos_, "unbalanced ')'");
      prev_ = branches_.back();
      branches_.pop_back();
      ++pos_;
      continue;
    }
    branch_just_opened = false;

    if (c == '-' || c == '=' || c == '#' || c == ':' || c == '/' ||
        c == '\\') {
      if (pending_)
        fail(ErrorCode::kSyntaxError, text_, pos_, "two consecutive bonds");
      PendingBond b;
      switch (c) {
      case '-': b.order = BondOrder::kSingle; b.explicit_order = true; break;
      case '=': b.order = BondOrder::kDouble; b.explicit_order = true; break;
      case '#': b.order = BondOrder::kTriple; b.explicit_order = true; break;
      case ':': b.order = BondOrder::kAromatic; b.explicit_order = true; break;
      default: b.directional = true; break;
      }
      pending_ = b;
      ++pos_;
      continue;
    }
    if (c == '.') {
      if (pending_ || prev_ < 0)
        fail(ErrorCode::kSyntaxError, text_, pos_, "misplaced '.'");
      if (!branches_.empty())
        fail(ErrorCode::kSyntaxError, text_, pos_, "'.' inside branch");
      prev_ = -1;
      ++pos_;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ++pos_;
      parse_ring_closure(c - '0');
      continue;
    }
    if (c == '%') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek())) ||
          !std::isdigit(static_cast<unsigned char>(peek(1))))
        fail(ErrorCode::kSyntaxError, text_, pos_, "bad %nn ring number");
      const int number = (peek() - '0') * 10 + (peek(1) - '0');
      pos_ += 2;
      parse_ring_closure(number);
      continue;
    }
    if (c == '[') {
      parse_bracket_atom();
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '*') {
      if (prev_ < 0 && pending_)
        fail(ErrorCode::kSyntaxError, text_, pos_, "leading bond");
      parse_organic_atom();
      continue;
    }
    fail(ErrorCode::kSyntaxError, text_, pos_,
         std::string("unexpected character '") + c + "'");
  }

  if (!rings_.empty())
    throw Error(ErrorCode::kUnclosedRingBond,
                "ring bond " + std::to_string(rings_.begin()->first) +
                    " never closed in '" + std::string(text_) + "'");
  if (!branches_.empty())
    throw Error(ErrorCode::kSyntaxError,
                "unclosed branch in '" + std::string(text_) + "'");
  if (pending_)
    throw Error(ErrorCode::kSyntaxError,
                "dangling bond in '" + std::string(text_) + "'");
  return std::move(g_);
}

// Drops neutral, unlabeled [H] atoms hanging off a heavy atom, moving the
// hydrogen onto the neighbor's count.
MolGraph fold_hydrogens(const MolGraph &g) {
  std::vector<bool> keep(g.num_atoms(), true);
  std::vector<int> extra_h(g.num_atoms(), 0);
  bool any = false;
  for (int i = 0; i < g.num_atoms(); ++i) {
    const Atom &a = g.atom(i);
    if (a.element != element::kH || a.formal_charge != 0 || a.isotope ||
        a.explicit_h.value_or(0) != 0 || g.degree(i) != 1)
      continue;
    const Neighbor nb = g.neighbors(i)[0];
    if (g.atom(nb.atom).element == element::kH ||
        g.bond(nb.bond).order != BondOrder::kSingle)
      continue;
    keep[i] = false;
    ++extra_h[nb.atom];
    any = true;
  }
  if (!any)
    return g;
  std::vector<int> map;
  MolGraph out = g.subgraph(keep, &map);
  for (int i = 0; i < g.num_atoms(); ++i) {
    if (!keep[i] || extra_h[i] == 0)
      continue;
    Atom &a = out.atom(map[i]);
    const int base = a.explicit_h ? *a.explicit_h : g.implicit_hydrogens(i);
    a.explicit_h = base + extra_h[i];
  }
  return out;
}

// Rewrites six-membered C/N rings whose bonds alternate single/double
// (already-aromatic bonds match either) into aromatic form. Repeats until
// stable so fused Kekule systems convert ring by ring.
void aromatize_kekule_rings(MolGraph &g) {
  bool candidate = false;
  const auto in_ring = ring_bonds(g);
  for (int b = 0; b < g.num_bonds(); ++b)
    if (in_ring[b] && g.bond(b).order == BondOrder::kDouble)
      candidate = true;
  if (!candidate)
    return;

  const auto rings = sssr(g);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto &ring: rings) {
      if (ring.size() != 6)
        continue;
      bool eligible = true;
      bool has_kekule_bond = false;
      for (int a: ring.atoms) {
        const int z = g.atom(a).element;
        if (z != element::kC && z != element::kN)
          eligible = false;
      }
      for (int b: ring.bonds) {
        if (g.bond(b).order == BondOrder::kTriple)
          eligible = false;
        if (g.bond(b).order != BondOrder::kAromatic)
          has_kekule_bond = true;
      }
      if (!eligible || !has_kekule_bond)
        continue;
      bool alternates = false;
      for (int phase = 0; phase < 2 && !alternates; ++phase) {
        bool ok = true;
        for (int i = 0; i < 6 && ok; ++i) {
          const BondOrder want =
              (i + phase) % 2 == 0 ? BondOrder::kDouble : BondOrder::kSingle;
          const BondOrder have = g.bond(ring.bonds[i]).order;
          ok = have == want || have == BondOrder::kAromatic;
        }
        alternates = ok;
      }
      if (!alternates)
        continue;
      for (int a: ring.atoms)
        g.atom(a).aromatic = true;
      for (int b: ring.bonds)
        g.bond(b).order = BondOrder::kAromatic;
      changed = true;
    }
  }
}

void check_aromatic_consistency(const MolGraph &g, std::string_view text) {
  const auto in_ring = ring_bonds(g);
  std::vector<bool> atom_in_ring(g.num_atoms(), false);
  for (int b = 0; b < g.num_bonds(); ++b) {
    const Bond &bond = g.bond(b);
    if (in_ring[b]) {
      atom_in_ring[bond.begin] = atom_in_ring[bond.end] = true;
    }
    if (bond.order != BondOrder::kAromatic)
      continue;
    if (!in_ring[b])
      throw Error(ErrorCode::kSyntaxError,
                  "aromatic bond outside a ring in '" + std::string(text) +
                      "'");
    if (!g.atom(bond.begin).aromatic || !g.atom(bond.end).aromatic)
      throw Error(ErrorCode::kSyntaxError,
                  "aromatic bond between non-aromatic atoms in '" +
                      std::string(text) + "'");
  }
  for (int i = 0; i < g.num_atoms(); ++i)
    if (g.atom(i).aromatic && !atom_in_ring[i])
      throw Error(ErrorCode::kSyntaxError,
                  "non-ring atom marked aromatic in '" + std::string(text) +
                      "'");
}

void check_valences(const MolGraph &g, std::string_view text) {
  for (int i = 0; i < g.num_atoms(); ++i) {
    const Atom &a = g.atom(i);
    const auto valences = default_valences(a.element);
    const int max_valence = valences.back() + std::abs(a.formal_charge);
    const int used = g.bond_order_sum(i) + a.explicit_h.value_or(0);
    if (used > max_valence)
      throw Error(ErrorCode::kValenceError,
                  "atom " + std::to_string(i) + " (" +
                      std::string(element_symbol(a.element)) + ") has valence " +
                      std::to_string(used) + " > " +
                      std::to_string(max_valence) + " in '" +
                      std::string(text) + "'");
  }
}

}  // namespace

MolGraph parse_smiles(std::string_view text) {
  Parser parser(text);
  MolGraph g = parser.run();

  // Implicit bonds between aromatic atoms that are bridges join two
  // aromatic systems by a single bond.
  {
    const auto in_ring = ring_bonds(g);
    const auto &implicit = parser.implicit_bonds();
    for (int b = 0; b < g.num_bonds(); ++b)
      if (implicit[b] && !in_ring[b] &&
          g.bond(b).order == BondOrder::kAromatic)
        g.bond(b).order = BondOrder::kSingle;
  }
  g = fold_hydrogens(g);
  aromatize_kekule_rings(g);
  check_aromatic_consistency(g, text);
  check_valences(g, text);
  return g;
}

}  // namespace scafnav
