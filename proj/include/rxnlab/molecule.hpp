#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rxnlab {

enum class BondOrder : std::uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

/// Integer code used in graph records and fingerprints (aromatic = 4).
constexpr int bond_code(BondOrder order) noexcept { return static_cast<int>(order); }

/// Directional single-bond marks ('/' and '\\') relative to begin -> end.
enum class BondStereo : std::uint8_t { None, Up, Down };

/// Tetrahedral tag as written ('@' / '@@'); carried through, never ranked.
enum class Chirality : std::uint8_t { None, CounterClockwise, Clockwise };

struct Atom {
  int atomic_number = 6;
  int formal_charge = 0;
  int implicit_hydrogens = 0;
  bool is_aromatic = false;
  std::optional<int> isotope;
  Chirality chirality = Chirality::None;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::Single;
  BondStereo stereo = BondStereo::None;

  int other(int atom) const noexcept { return atom == begin ? end : begin; }
  friend bool operator==(const Bond&, const Bond&) = default;
};

struct Neighbor {
  int atom;
  int bond;
};

/// A ring as an ordered atom cycle plus the bonds joining consecutive atoms.
struct Ring {
  std::vector<int> atoms;
  std::vector<int> bonds;
};

/// Attributed, simple, undirected molecular graph.
///
/// Construction validates the graph (no self loops or parallel bonds, every
/// aromatic bond between aromatic ring atoms, a Kekule assignment exists and
/// every valence is admissible) and derives ring information. A Molecule that
/// exists is valid. Out-of-range bond endpoints throw InvalidArgument, every
/// other violation throws ChemistryError.
class Molecule {
 public:
  Molecule() = default;
  Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds);

  std::size_t atom_count() const noexcept { return atoms_.size(); }
  std::size_t bond_count() const noexcept { return bonds_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }

  const Atom& atom(int i) const { return atoms_[static_cast<std::size_t>(i)]; }
  const Bond& bond(int i) const { return bonds_[static_cast<std::size_t>(i)]; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::span<const Bond> bonds() const noexcept { return bonds_; }
  std::span<const Neighbor> neighbors(int i) const {
    return adjacency_[static_cast<std::size_t>(i)];
  }
  int degree(int i) const { return static_cast<int>(neighbors(i).size()); }
  std::optional<int> bond_between(int a, int b) const;

  bool atom_in_ring(int i) const { return atom_in_ring_[static_cast<std::size_t>(i)]; }
  bool bond_in_ring(int i) const { return bond_in_ring_[static_cast<std::size_t>(i)]; }
  /// Number of smallest-set-of-smallest-rings members containing atom i.
  int ring_count(int i) const { return ring_count_[static_cast<std::size_t>(i)]; }
  std::span<const Ring> rings() const noexcept { return rings_; }

  /// Connected-component index per atom, components numbered by lowest atom.
  const std::vector<int>& fragment_ids() const noexcept { return fragment_; }
  int fragment_count() const noexcept { return fragment_count_; }

  /// True when some atom's element sits outside the valence table.
  bool has_unchecked_valence() const noexcept { return unchecked_valence_; }

  int heavy_atom_count() const;
  int total_hydrogens(int i) const { return atom(i).implicit_hydrogens; }

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<bool> atom_in_ring_;
  std::vector<bool> bond_in_ring_;
  std::vector<int> ring_count_;
  std::vector<Ring> rings_;
  std::vector<int> fragment_;
  int fragment_count_ = 0;
  bool unchecked_valence_ = false;
};

/// Copy of `mol` where old atom i becomes atom new_index[i].
/// `new_index` must be a permutation of 0..n-1.
Molecule renumber_atoms(const Molecule& mol, std::span<const int> new_index);

/// Induced subgraph on atoms with keep[i] set. Bonds to dropped atoms are
/// replaced by hydrogens on the kept endpoint so valences stay satisfied.
Molecule induced_submolecule(const Molecule& mol, const std::vector<bool>& keep);

/// One Molecule per connected component, in component-id order.
std::vector<Molecule> split_fragments(const Molecule& mol);

}  // namespace rxnlab
