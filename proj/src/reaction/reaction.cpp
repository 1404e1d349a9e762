#include "rxnlab/reaction.hpp"

#include <algorithm>
#include <cmath>

#include "rxnlab/smiles.hpp"

namespace rxnlab {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Reactant: return "reactant";
    case Role::Reagent: return "reagent";
    case Role::Product: return "product";
  }
  return "unknown";
}

namespace {

std::vector<Molecule> parse_side(std::string_view side, Role role) {
  std::vector<Molecule> out;
  if (side.empty()) return out;
  std::size_t index = 0;
  for (;;) {
    const std::size_t dot = side.find('.');
    const std::string_view frag = side.substr(0, dot);
    try {
      out.push_back(parse_smiles(frag));
    } catch (const Error& e) {
      throw ReactionFragmentError(role, index, std::string(frag), e.what());
    }
    ++index;
    if (dot == std::string_view::npos) break;
    side.remove_prefix(dot + 1);
  }
  return out;
}

}  // namespace

Reaction parse_reaction(std::string_view text) {
  const std::size_t a = text.find('>');
  if (a == std::string_view::npos) throw SyntaxError("reaction SMILES needs '>>' or 'A>B>C'", 0);
  const std::size_t b = text.find('>', a + 1);
  if (b == std::string_view::npos) throw SyntaxError("reaction SMILES has only one '>'", a);
  if (text.find('>', b + 1) != std::string_view::npos) {
    throw SyntaxError("reaction SMILES has more than two '>'", text.find('>', b + 1));
  }
  Reaction rxn;
  rxn.reactants = parse_side(text.substr(0, a), Role::Reactant);
  rxn.reagents = parse_side(text.substr(a + 1, b - a - 1), Role::Reagent);
  rxn.products = parse_side(text.substr(b + 1), Role::Product);
  if (rxn.products.empty()) throw SyntaxError("empty product side", b + 1);
  if (rxn.reactants.empty()) throw SyntaxError("empty reactant side", 0);
  return rxn;
}

std::string role_smiles(const std::vector<Molecule>& mols) {
  std::vector<std::string> parts;
  parts.reserve(mols.size());
  for (const Molecule& m : mols) parts.push_back(canonical_smiles(m));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += '.';
    out += p;
  }
  return out;
}

std::string reaction_key(const Reaction& rxn, bool merge_agents) {
  if (merge_agents) {
    std::vector<Molecule> left = rxn.reactants;
    left.insert(left.end(), rxn.reagents.begin(), rxn.reagents.end());
    return role_smiles(left) + ">>" + role_smiles(rxn.products);
  }
  return role_smiles(rxn.reactants) + ">" + role_smiles(rxn.reagents) + ">" +
         role_smiles(rxn.products);
}

const Molecule& principal_molecule(const Reaction& rxn) {
  if (rxn.products.empty()) throw InvalidArgument("reaction has no products");
  const Molecule* best = &rxn.products.front();
  std::string best_smiles = canonical_smiles(*best);
  for (std::size_t i = 1; i < rxn.products.size(); ++i) {
    const Molecule& m = rxn.products[i];
    const int heavy = m.heavy_atom_count();
    if (heavy < best->heavy_atom_count()) continue;
    std::string s = canonical_smiles(m);
    if (heavy > best->heavy_atom_count() || s < best_smiles) {
      best = &m;
      best_smiles = std::move(s);
    }
  }
  return *best;
}

std::string record_id(const nlohmann::json& record) {
  if (!record.is_object() || !record.contains("id")) throw SchemaError("record has no \"id\"");
  const auto& id = record["id"];
  if (id.is_string()) return id.get<std::string>();
  if (id.is_number_integer()) return std::to_string(id.get<long long>());
  throw SchemaError("\"id\" must be a string or integer");
}

std::optional<double> parse_yield(const nlohmann::json& record) {
  std::optional<double> value;
  if (record.contains("yield") && !record["yield"].is_null()) {
    const auto& y = record["yield"];
    if (y.is_number()) {
      value = y.get<double>();
    } else if (y.is_string()) {
      std::string s = y.get<std::string>();
      while (!s.empty() && s.back() == ' ') s.pop_back();
      const bool percent = !s.empty() && s.back() == '%';
      if (percent) s.pop_back();
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(s, &used);
      } catch (const std::exception&) {
        throw SchemaError("\"yield\" is not a number: '" + y.get<std::string>() + "'");
      }
      if (used != s.size()) throw SchemaError("\"yield\" is not a number: '" + y.get<std::string>() + "'");
      value = percent ? v / 100.0 : v;
    } else {
      throw SchemaError("\"yield\" must be a number or a percentage string");
    }
  }
  if (record.contains("yield_percent") && !record["yield_percent"].is_null()) {
    if (value) throw SchemaError("record has both \"yield\" and \"yield_percent\"");
    if (!record["yield_percent"].is_number()) throw SchemaError("\"yield_percent\" must be a number");
    value = record["yield_percent"].get<double>() / 100.0;
  }
  if (value && (!std::isfinite(*value) || *value < 0.0 || *value > 1.0)) {
    throw SchemaError("yield " + std::to_string(*value) + " outside [0, 1]");
  }
  return value;
}

ReactionRecord parse_reaction_record(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("reaction record must be a JSON object");
  ReactionRecord rec;
  rec.id = record_id(j);
  if (!j.contains("rxn") || !j["rxn"].is_string()) throw SchemaError("record needs a string \"rxn\"");
  rec.rxn = j["rxn"].get<std::string>();
  rec.reaction = parse_reaction(rec.rxn);
  for (const char* field : {"catalyst", "solvent", "reagent"}) {
    if (!j.contains(field) || j[field].is_null()) continue;
    std::vector<std::string> items;
    if (j[field].is_string()) {
      items.push_back(j[field].get<std::string>());
    } else if (j[field].is_array()) {
      for (const auto& v : j[field]) {
        if (!v.is_string()) throw SchemaError(std::string("\"") + field + "\" entries must be strings");
        items.push_back(v.get<std::string>());
      }
    } else {
      throw SchemaError(std::string("\"") + field + "\" must be a SMILES string or list");
    }
    auto& mols = rec.reaction.conditions[field];
    for (const std::string& s : items) {
      try {
        mols.push_back(parse_smiles(s));
      } catch (const Error& e) {
        throw ChemistryError(std::string(field) + " '" + s + "': " + e.what());
      }
    }
  }
  rec.reaction.yield_fraction = parse_yield(j);
  if (j.contains("class") && !j["class"].is_null()) {
    const auto& c = j["class"];
    if (c.is_string()) {
      rec.reaction.reaction_class = c.get<std::string>();
    } else if (c.is_number_integer()) {
      rec.reaction.reaction_class = std::to_string(c.get<long long>());
    } else {
      throw SchemaError("\"class\" must be a string or integer");
    }
  }
  return rec;
}

}  // namespace rxnlab
