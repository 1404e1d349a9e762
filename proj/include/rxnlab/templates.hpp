#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace rxnlab {

/// The 16 task ids, pretraining tasks first.
inline constexpr std::string_view kTemplateTasks[] = {
    "caption",         "iupac_to_formula",  "iupac_to_smiles",   "graph_to_formula",
    "graph_to_iupac",  "graph_to_smiles",   "forward",           "retro",
    "catalyst",        "reagent",           "solvent",           "reagent_selection",
    "ligand_selection", "solvent_selection", "yield",            "reaction_class"};

/// Text patterns with `<name>` placeholders. Placeholders listed in
/// molecule_slots become the sentinel in sentinel mode.
struct TaskTemplate {
  std::string task;
  std::string system;
  std::string instruction;
  std::string output;
  std::vector<std::string> molecule_slots;
};

/// Placeholder names of a pattern, in order of first appearance.
std::vector<std::string> placeholders(std::string_view pattern);

inline constexpr std::string_view kMolSentinel = "<mol>";

enum class MoleculeMode { Smiles, Sentinel };

/// Every list is joined with '.'; a single value is a one-element list.
using Bindings = std::map<std::string, std::vector<std::string>>;

struct RenderedPrompt {
  std::string task;
  std::string system;
  std::string instruction;
  std::optional<std::string> output;
};

nlohmann::ordered_json to_json(const RenderedPrompt& prompt);

/// Instruction placeholders must all be bound. The output is rendered when
/// every output placeholder is bound and omitted when none is. Throws
/// InvalidArgument naming a missing or unknown placeholder.
RenderedPrompt render(const TaskTemplate& tmpl, const Bindings& bindings,
                      MoleculeMode mode = MoleculeMode::Smiles);

/// Bindings from a JSON object whose values are strings, numbers or arrays
/// of strings.
Bindings parse_bindings(const nlohmann::json& j);

/// Recovers instruction bindings (as joined strings) from rendered text.
/// Returns nullopt when the text does not follow the pattern.
std::optional<std::map<std::string, std::string>> extract(const TaskTemplate& tmpl,
                                                          std::string_view instruction);

class TemplateRegistry {
 public:
  /// The 16 printed templates, one per task.
  static const TemplateRegistry& builtin();

  /// {"templates": [{"task", "system", "instruction", "output", "molecule_slots"?}]}.
  /// Tasks must be known ids. Throws SchemaError.
  static TemplateRegistry from_json(const nlohmann::json& j);
  static TemplateRegistry load(const std::string& path);

  /// Builtins plus the variants from `extra`.
  TemplateRegistry merged(const TemplateRegistry& extra) const;

  /// First registered template; throws InvalidArgument for unknown tasks.
  const TaskTemplate& primary(std::string_view task) const;
  const std::vector<TaskTemplate>& variants(std::string_view task) const;

  /// Seeded choice among the task's variants; `key` (e.g. a record id)
  /// makes the choice per record while staying order independent.
  const TaskTemplate& choose(std::string_view task, std::uint64_t seed, std::string_view key) const;

  nlohmann::ordered_json to_json() const;

 private:
  void add(TaskTemplate t);
  std::map<std::string, std::vector<TaskTemplate>, std::less<>> by_task_;
};

}  // namespace rxnlab
