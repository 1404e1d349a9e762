#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace rxnlab::elements {

inline constexpr int kMaxAtomicNumber = 118;

/// Element symbol for Z in 1..=118 ("?" otherwise).
std::string_view symbol(int atomic_number);

/// Z for a case-sensitive element symbol ("Cl", "C"), or nullopt.
std::optional<int> atomic_number(std::string_view symbol);

/// Allowed total valences for an element carrying `formal_charge`, ascending.
/// Returns nullopt for elements outside the valence table (any valence accepted).
std::optional<std::vector<int>> allowed_valences(int atomic_number, int formal_charge);

/// True for the SMILES organic subset B C N O P S F Cl Br I.
bool in_organic_subset(int atomic_number);

/// True for elements that may be written with a lowercase aromatic symbol.
bool may_be_aromatic(int atomic_number);

}  // namespace rxnlab::elements
