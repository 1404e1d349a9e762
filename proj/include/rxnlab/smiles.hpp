#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rxnlab/molecule.hpp"

namespace rxnlab {

/// Parses a SMILES string (organic subset, bracket atoms, branches, ring
/// bonds 1-9 and %NN, '.', charges, isotopes, '/', '\\', '@').
///
/// Lowercase atoms are honored as aromatic; rings written in Kekule form are
/// additionally checked for Hueckel aromaticity. Explicit neutral hydrogens
/// attached to one heavy atom are folded into that atom's hydrogen count.
///
/// Throws SyntaxError for grammar violations and ChemistryError when the
/// graph is well formed but chemically impossible.
Molecule parse_smiles(std::string_view text);

/// Canonical ranks (0..n-1, all distinct) for every atom. Equal for atoms
/// mapped onto each other by any renumbering of the same molecule.
std::vector<int> canonical_ranks(const Molecule& mol);

/// Deterministic SMILES, independent of input atom order and idempotent.
/// Fragments are written separately and joined in lexicographic order.
std::string canonical_smiles(const Molecule& mol);

/// SMILES for the molecule visiting atoms in the given rank order, used by
/// canonical_smiles(). Exposed for tests.
std::string write_smiles(const Molecule& mol, const std::vector<int>& ranks);

/// Hill-order formula: C, then H, then the rest alphabetically; without
/// carbon every element (H included) is alphabetical.
std::string molecular_formula(const Molecule& mol);

enum class Verdict { Valid, SyntaxError, ChemistryError };

struct Validation {
  Verdict verdict = Verdict::Valid;
  std::string detail;

  bool ok() const noexcept { return verdict == Verdict::Valid; }
};

/// Never throws: the verdict is the result.
Validation validate(std::string_view text);

std::string_view to_string(Verdict v);

}  // namespace rxnlab
