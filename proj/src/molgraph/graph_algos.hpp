#pragma once

// Internal graph routines shared by the parser, Molecule construction and
// the aromaticity model. Not installed.

#include <optional>
#include <vector>

#include "rxnlab/molecule.hpp"

namespace rxnlab::detail {

using Adjacency = std::vector<std::vector<Neighbor>>;

Adjacency build_adjacency(int atom_count, const std::vector<Bond>& bonds);

/// Non-bridge bonds (bonds lying on at least one cycle).
std::vector<bool> find_ring_bonds(const Adjacency& adj, int bond_count);

/// Every shortest cycle through every ring bond, deduplicated. Independent of
/// atom numbering up to `per_bond_cap` shortest paths per bond.
std::vector<Ring> shortest_cycles(const Adjacency& adj, const std::vector<Bond>& bonds,
                                  const std::vector<bool>& ring_bond, int per_bond_cap = 64);

/// Greedy GF(2)-independent subset of `cycles` (smallest first) spanning the
/// cycle space; an approximation of the smallest set of smallest rings.
std::vector<Ring> smallest_ring_basis(std::vector<Ring> cycles, const Adjacency& adj,
                                      const std::vector<Bond>& bonds,
                                      const std::vector<bool>& ring_bond);

/// Hydrogens an organic-subset atom receives from the parser given its bonds.
/// `bond_sum` counts non-aromatic bond orders, `aromatic_bonds` the aromatic ones.
int default_hydrogens(int atomic_number, bool aromatic, int bond_sum, int aromatic_bonds);

/// Assigns single/double orders to aromatic bonds. Returns per-bond orders
/// (non-aromatic bonds copied) or nullopt when no Kekule structure exists.
std::optional<std::vector<BondOrder>> kekulize(const std::vector<Atom>& atoms,
                                               const std::vector<Bond>& bonds,
                                               const Adjacency& adj);

/// Marks Hueckel-aromatic rings (single rings and fused pairs) in place.
/// Non-aromatic bonds must hold Kekule orders.
void perceive_aromaticity(std::vector<Atom>& atoms, std::vector<Bond>& bonds,
                          const Adjacency& adj,
                          const std::vector<Ring>& cycles, const std::vector<bool>& ring_bond);

}  // namespace rxnlab::detail
