#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rxnlab/errors.hpp"
#include "rxnlab/molecule.hpp"

namespace rxnlab {

enum class Role { Reactant, Reagent, Product };

std::string_view to_string(Role role);

struct Reaction {
  std::vector<Molecule> reactants;
  std::vector<Molecule> reagents;
  std::vector<Molecule> products;
  /// "catalyst", "solvent", "reagent" -> molecules, from record fields.
  std::map<std::string, std::vector<Molecule>> conditions;
  std::optional<double> yield_fraction;
  std::optional<std::string> reaction_class;
};

/// Parses "A.B>>C" or "A.B>G>C". Each '.'-separated fragment becomes one
/// molecule. Throws SyntaxError when the arrows are malformed or the product
/// side is empty, and ReactionFragmentError for a bad fragment.
Reaction parse_reaction(std::string_view text);

class ReactionFragmentError : public Error {
 public:
  ReactionFragmentError(Role role, std::size_t index, const std::string& fragment,
                        const std::string& detail)
      : Error(std::string(to_string(role)) + " " + std::to_string(index) + " ('" + fragment +
              "'): " + detail),
        role_(role),
        index_(index) {}
  Role role() const noexcept { return role_; }
  std::size_t index() const noexcept { return index_; }

 private:
  Role role_;
  std::size_t index_;
};

/// Canonical "R1.R2>G1>P1.P2": fragments canonicalized and sorted per role.
/// With merge_agents the reagents join the reactants ("R.G>>P").
std::string reaction_key(const Reaction& rxn, bool merge_agents = false);

/// Canonical fragments of each role, sorted, joined by '.'.
std::string role_smiles(const std::vector<Molecule>& mols);

/// The largest product by heavy-atom count (ties: smallest canonical SMILES).
const Molecule& principal_molecule(const Reaction& rxn);

struct ReactionRecord {
  std::string id;
  std::string rxn;
  Reaction reaction;
};

/// Reads {"id", "rxn", optional "catalyst"/"solvent"/"reagent",
/// "yield" | "yield_percent", "class"}. Throws SchemaError for shape
/// problems and chemistry errors from the reaction text.
ReactionRecord parse_reaction_record(const nlohmann::json& j);

/// Yield as a fraction in [0,1]. Numbers must already be fractions;
/// strings ending in '%' and the "yield_percent" field are divided by 100.
/// Out-of-range values are a SchemaError, never clamped.
std::optional<double> parse_yield(const nlohmann::json& record);

/// Record id as a string; integer ids are written in decimal.
std::string record_id(const nlohmann::json& record);

}  // namespace rxnlab
