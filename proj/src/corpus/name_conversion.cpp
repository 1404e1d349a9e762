#include <cctype>

#include "rxnlab/corpus.hpp"
#include "rxnlab/elements.hpp"
#include "rxnlab/errors.hpp"
#include "rxnlab/reaction.hpp"
#include "rxnlab/smiles.hpp"

namespace rxnlab {

std::map<std::string, int> parse_formula(std::string_view formula) {
  std::map<std::string, int> counts;
  std::size_t i = 0;
  if (formula.empty()) throw InvalidArgument("empty formula");
  while (i < formula.size()) {
    if (!std::isupper(static_cast<unsigned char>(formula[i]))) {
      throw InvalidArgument("bad formula '" + std::string(formula) + "' at offset " + std::to_string(i));
    }
    std::string sym(1, formula[i++]);
    if (i < formula.size() && std::islower(static_cast<unsigned char>(formula[i]))) sym += formula[i++];
    if (!elements::atomic_number(sym)) {
      throw InvalidArgument("unknown element '" + sym + "' in formula '" + std::string(formula) + "'");
    }
    int n = 0;
    bool has_digits = false;
    while (i < formula.size() && std::isdigit(static_cast<unsigned char>(formula[i]))) {
      n = n * 10 + (formula[i++] - '0');
      has_digits = true;
      if (n > 1000000) throw InvalidArgument("formula count too large");
    }
    if (!has_digits) n = 1;
    if (n == 0) throw InvalidArgument("zero count in formula '" + std::string(formula) + "'");
    counts[sym] += n;
  }
  return counts;
}

NameEntry parse_name_entry(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("name entry must be a JSON object");
  NameEntry e;
  if (j.contains("id")) e.id = record_id(j);
  if (!j.contains("smiles") || !j["smiles"].is_string()) throw SchemaError("name entry needs a string \"smiles\"");
  e.smiles = j["smiles"].get<std::string>();
  for (const char* key : {"iupac", "formula"}) {
    if (!j.contains(key) || j[key].is_null()) continue;
    if (!j[key].is_string()) throw SchemaError(std::string("\"") + key + "\" must be a string");
    std::string value = j[key].get<std::string>();
    if (value.empty()) continue;
    (std::string_view(key) == "iupac" ? e.iupac : e.formula) = std::move(value);
  }
  return e;
}

std::vector<NameConversionRecord> build_name_conversion(const NameEntry& entry) {
  const Molecule mol = parse_smiles(entry.smiles);
  const std::string formula = molecular_formula(mol);
  if (entry.formula && parse_formula(*entry.formula) != parse_formula(formula)) {
    throw ChemistryError("formula mismatch: given " + *entry.formula + ", structure has " + formula);
  }
  const std::string smiles = canonical_smiles(mol);
  const GraphRecord graph = to_graph_record(mol);
  std::vector<NameConversionRecord> out;
  for (std::string_view task : kNameTasks) {
    const bool uses_iupac = task.find("iupac") != std::string_view::npos;
    if (uses_iupac && !entry.iupac) continue;
    NameConversionRecord r;
    r.id = entry.id;
    r.task = std::string(task);
    if (task.rfind("iupac_to_", 0) == 0) {
      r.input = *entry.iupac;
    } else {
      r.input = graph;
    }
    if (task.ends_with("_formula")) {
      r.target = formula;
    } else if (task.ends_with("_smiles")) {
      r.target = smiles;
    } else {
      r.target = *entry.iupac;
    }
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::ordered_json to_json(const NameConversionRecord& record) {
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["task"] = record.task;
  if (const auto* s = std::get_if<std::string>(&record.input)) {
    j["input"] = *s;
  } else {
    nlohmann::ordered_json g;
    to_json(g, std::get<GraphRecord>(record.input));
    j["input"] = std::move(g);
  }
  j["target"] = record.target;
  return j;
}

}  // namespace rxnlab
