#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scafnav {

// Atomic numbers of the supported element set.
namespace element {
inline constexpr int kH = 1;
inline constexpr int kB = 5;
inline constexpr int kC = 6;
inline constexpr int kN = 7;
inline constexpr int kO = 8;
inline constexpr int kF = 9;
inline constexpr int kSi = 14;
inline constexpr int kP = 15;
inline constexpr int kS = 16;
inline constexpr int kCl = 17;
inline constexpr int kAs = 33;
inline constexpr int kSe = 34;
inline constexpr int kBr = 35;
inline constexpr int kI = 53;
}  // namespace element

std::string_view element_symbol(int atomic_number);
// Returns 0 for symbols outside the supported set.
int element_from_symbol(std::string_view symbol);
bool is_organic_subset(int atomic_number);
// Allowed valences in ascending order; empty for unsupported elements.
std::span<const int> default_valences(int atomic_number);

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

// Contribution of a bond to its atoms' valence; aromatic bonds count 1.
constexpr int valence_contribution(BondOrder order) {
  return order == BondOrder::kAromatic ? 1 : static_cast<int>(order);
}

enum class Chirality : std::uint8_t { kNone, kCounterClockwise, kClockwise };

struct Atom {
  int element = element::kC;
  int formal_charge = 0;
  // Set for bracket atoms; organic-subset atoms derive hydrogens from
  // the default valence table.
  std::optional<int> explicit_h;
  bool aromatic = false;
  std::optional<int> isotope;
  Chirality chirality = Chirality::kNone;

  bool operator==(const Atom &) const = default;
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::kSingle;
  // Recorded '/' or '\' direction marker; ignored downstream.
  bool directional = false;

  int other(int atom) const { return atom == begin ? end : begin; }
};

struct Neighbor {
  int atom;
  int bond;
};

class MolGraph {
public:
  MolGraph() = default;

  int add_atom(const Atom &atom);
  // Throws Error(kSyntaxError) on self loops or a duplicate bond.
  int add_bond(int begin, int end, BondOrder order, bool directional = false);

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }
  bool empty() const { return atoms_.empty(); }

  const Atom &atom(int i) const { return atoms_[i]; }
  Atom &atom(int i) { return atoms_[i]; }
  const Bond &bond(int i) const { return bonds_[i]; }
  Bond &bond(int i) { return bonds_[i]; }
  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<Bond> &bonds() const { return bonds_; }

  std::span<const Neighbor> neighbors(int atom) const { return adj_[atom]; }
  int degree(int atom) const { return static_cast<int>(adj_[atom].size()); }
  std::optional<int> bond_between(int a, int b) const;

  // Sum of valence_contribution over incident bonds.
  int bond_order_sum(int atom) const;
  bool has_aromatic_bond(int atom) const;
  // Total attached hydrogens: explicit count for bracket atoms, otherwise
  // the implicit count from the default valence table (floored at 0).
  int hydrogen_count(int atom) const;
  // Implicit count an organic-subset atom with this environment would get,
  // ignoring any explicit count.
  int implicit_hydrogens(int atom) const;

  // Component id per atom (dense, in order of lowest atom index) and the
  // number of components.
  std::vector<int> component_ids(int *num_components = nullptr) const;

  // Builds the subgraph holding the kept atoms and every kept bond whose
  // endpoints are both kept. `old_to_new` receives -1 for dropped atoms.
  MolGraph subgraph(const std::vector<bool> &keep_atom,
                    const std::vector<bool> &keep_bond,
                    std::vector<int> *old_to_new = nullptr) const;
  MolGraph subgraph(const std::vector<bool> &keep_atom,
                    std::vector<int> *old_to_new = nullptr) const;

  // Same atoms/bonds in a new atom order: new index i holds old atom
  // order[i]. Bond order in the bond list follows the new indices.
  MolGraph permuted(std::span<const int> order) const;

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adj_;
};

// Subgraph in which kept atoms that lose bonds are capped with hydrogens.
// Bracket atoms and aromatic atoms take the lost valence as explicit
// hydrogens (n-methylpyrrole loses its methyl as [nH]); other organic-subset
// atoms fall back to the default valence table.
MolGraph capped_subgraph(const MolGraph &g, const std::vector<bool> &keep_atom,
                         const std::vector<bool> &keep_bond);

// Cyclomatic number |bonds| - |atoms| + |components|.
int ring_count(const MolGraph &g);

// Bonds lying on at least one cycle (i.e. not bridges).
std::vector<bool> ring_bonds(const MolGraph &g);
std::vector<bool> ring_atoms(const MolGraph &g);

// Largest connected component by atom count; ties go to the component
// whose canonical SMILES sorts first.
MolGraph largest_component(const MolGraph &g);

}  // namespace scafnav
