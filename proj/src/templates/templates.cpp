#include <algorithm>
#include <fstream>
#include <random>
#include <regex>
#include <set>

#include "rxnlab/errors.hpp"
#include "rxnlab/fingerprint.hpp"
#include "rxnlab/templates.hpp"
#include "templates_internal.hpp"

namespace rxnlab {

namespace {

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

// Splits a pattern into literal runs and placeholder names. Even entries are
// literals, odd entries placeholder names.
std::vector<std::string> tokenize(std::string_view pattern) {
  std::vector<std::string> parts(1);
  std::size_t i = 0;
  while (i < pattern.size()) {
    if (pattern[i] == '<') {
      std::size_t j = i + 1;
      while (j < pattern.size() && is_name_char(pattern[j])) ++j;
      if (j > i + 1 && j < pattern.size() && pattern[j] == '>') {
        parts.emplace_back(pattern.substr(i + 1, j - i - 1));
        parts.emplace_back();
        i = j + 1;
        continue;
      }
    }
    parts.back() += pattern[i++];
  }
  return parts;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const std::string& s : items) {
    if (!out.empty()) out += '.';
    out += s;
  }
  return out;
}

std::string fill(const std::vector<std::string>& parts, const Bindings& bindings,
                 const std::set<std::string>& molecule_slots, MoleculeMode mode) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k % 2 == 0) {
      out += parts[k];
      continue;
    }
    const auto& values = bindings.at(parts[k]);
    if (mode == MoleculeMode::Sentinel && molecule_slots.count(parts[k])) {
      out += join(std::vector<std::string>(values.size(), std::string(kMolSentinel)));
    } else {
      out += join(values);
    }
  }
  return out;
}

std::string regex_escape(std::string_view s) {
  static const std::string kSpecial = R"(\^$.|?*+()[]{}/)";
  std::string out;
  for (const char c : s) {
    if (kSpecial.find(c) != std::string::npos) out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::vector<std::string> placeholders(std::string_view pattern) {
  std::vector<std::string> names;
  const auto parts = tokenize(pattern);
  for (std::size_t k = 1; k < parts.size(); k += 2) {
    if (std::find(names.begin(), names.end(), parts[k]) == names.end()) names.push_back(parts[k]);
  }
  return names;
}

RenderedPrompt render(const TaskTemplate& tmpl, const Bindings& bindings, MoleculeMode mode) {
  const auto instruction = placeholders(tmpl.instruction);
  const auto output = placeholders(tmpl.output);
  for (const auto& [name, values] : bindings) {
    if (std::find(instruction.begin(), instruction.end(), name) == instruction.end() &&
        std::find(output.begin(), output.end(), name) == output.end()) {
      throw InvalidArgument("unknown placeholder <" + name + "> for task " + tmpl.task);
    }
    if (values.empty()) throw InvalidArgument("placeholder <" + name + "> bound to an empty list");
  }
  for (const std::string& name : instruction) {
    if (!bindings.count(name)) throw InvalidArgument("missing placeholder <" + name + "> for task " + tmpl.task);
  }
  std::size_t output_only = 0;
  std::size_t bound = 0;
  const std::string* missing = nullptr;
  for (const std::string& n : output) {
    if (std::find(instruction.begin(), instruction.end(), n) != instruction.end()) continue;
    ++output_only;
    if (bindings.count(n)) {
      ++bound;
    } else if (!missing) {
      missing = &n;
    }
  }
  if (bound != 0 && missing) throw InvalidArgument("missing placeholder <" + *missing + "> for task " + tmpl.task);
  const std::set<std::string> slots(tmpl.molecule_slots.begin(), tmpl.molecule_slots.end());
  RenderedPrompt p;
  p.task = tmpl.task;
  p.system = tmpl.system;
  p.instruction = fill(tokenize(tmpl.instruction), bindings, slots, mode);
  if (bound == output_only) {
    p.output = fill(tokenize(tmpl.output), bindings, {}, MoleculeMode::Smiles);
  }
  return p;
}

nlohmann::ordered_json to_json(const RenderedPrompt& prompt) {
  nlohmann::ordered_json j;
  j["task"] = prompt.task;
  j["system"] = prompt.system;
  j["instruction"] = prompt.instruction;
  if (prompt.output) j["output"] = *prompt.output;
  return j;
}

Bindings parse_bindings(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("bindings must be a JSON object");
  Bindings b;
  for (const auto& [name, value] : j.items()) {
    std::vector<std::string> items;
    auto scalar = [&](const nlohmann::json& v) {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_integer()) return std::to_string(v.get<long long>());
      if (v.is_number()) return v.dump();
      throw SchemaError("binding \"" + name + "\" must be a string, number or list of strings");
    };
    if (value.is_array()) {
      for (const auto& v : value) items.push_back(scalar(v));
    } else {
      items.push_back(scalar(value));
    }
    b[name] = std::move(items);
  }
  return b;
}

std::optional<std::map<std::string, std::string>> extract(const TaskTemplate& tmpl,
                                                          std::string_view instruction) {
  const auto parts = tokenize(tmpl.instruction);
  std::string expr;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k % 2 == 0) {
      expr += regex_escape(parts[k]);
    } else {
      expr += "([\\s\\S]+?)";
      names.push_back(parts[k]);
    }
  }
  const std::regex re(expr);
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(instruction.begin(), instruction.end(), m, re)) return std::nullopt;
  std::map<std::string, std::string> out;
  for (std::size_t k = 0; k < names.size(); ++k) {
    const std::string value = m[k + 1].str();
    const auto [it, fresh] = out.emplace(names[k], value);
    if (!fresh && it->second != value) return std::nullopt;
  }
  return out;
}

const TemplateRegistry& TemplateRegistry::builtin() {
  static const TemplateRegistry reg = [] {
    TemplateRegistry r;
    for (TaskTemplate& t : detail::builtin_templates()) r.add(std::move(t));
    return r;
  }();
  return reg;
}

void TemplateRegistry::add(TaskTemplate t) {
  if (std::find(std::begin(kTemplateTasks), std::end(kTemplateTasks), t.task) == std::end(kTemplateTasks)) {
    throw SchemaError("unknown template task '" + t.task + "'");
  }
  const auto names = placeholders(t.instruction);
  for (const std::string& slot : t.molecule_slots) {
    if (std::find(names.begin(), names.end(), slot) == names.end()) {
      throw SchemaError("molecule slot <" + slot + "> does not appear in the instruction of " + t.task);
    }
  }
  by_task_[t.task].push_back(std::move(t));
}

TemplateRegistry TemplateRegistry::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("templates") || !j["templates"].is_array()) {
    throw SchemaError("template registry needs a \"templates\" array");
  }
  TemplateRegistry r;
  for (const auto& e : j["templates"]) {
    if (!e.is_object()) throw SchemaError("template entry must be an object");
    TaskTemplate t;
    for (auto [field, dest] : {std::pair{"task", &t.task}, std::pair{"system", &t.system},
                               std::pair{"instruction", &t.instruction}, std::pair{"output", &t.output}}) {
      if (!e.contains(field) || !e[field].is_string()) {
        throw SchemaError(std::string("template entry needs a string \"") + field + "\"");
      }
      *dest = e[field].get<std::string>();
    }
    if (e.contains("molecule_slots")) {
      if (!e["molecule_slots"].is_array()) throw SchemaError("\"molecule_slots\" must be an array");
      for (const auto& s : e["molecule_slots"]) {
        if (!s.is_string()) throw SchemaError("\"molecule_slots\" entries must be strings");
        t.molecule_slots.push_back(s.get<std::string>());
      }
    }
    r.add(std::move(t));
  }
  return r;
}

TemplateRegistry TemplateRegistry::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open template registry " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return from_json(j);
}

TemplateRegistry TemplateRegistry::merged(const TemplateRegistry& extra) const {
  TemplateRegistry r = *this;
  for (const auto& [task, list] : extra.by_task_) {
    for (const TaskTemplate& t : list) r.add(t);
  }
  return r;
}

const std::vector<TaskTemplate>& TemplateRegistry::variants(std::string_view task) const {
  const auto it = by_task_.find(task);
  if (it == by_task_.end()) throw InvalidArgument("unknown task '" + std::string(task) + "'");
  return it->second;
}

const TaskTemplate& TemplateRegistry::primary(std::string_view task) const {
  return variants(task).front();
}

const TaskTemplate& TemplateRegistry::choose(std::string_view task, std::uint64_t seed,
                                             std::string_view key) const {
  const auto& list = variants(task);
  if (list.size() == 1) return list.front();
  std::mt19937_64 rng(seed ^ fnv1a(reinterpret_cast<const std::uint8_t*>(key.data()), key.size()));
  return list[static_cast<std::size_t>(rng() % list.size())];
}

nlohmann::ordered_json TemplateRegistry::to_json() const {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (std::string_view task : kTemplateTasks) {
    const auto it = by_task_.find(task);
    if (it == by_task_.end()) continue;
    for (const TaskTemplate& t : it->second) {
      list.push_back({{"task", t.task},
                      {"system", t.system},
                      {"instruction", t.instruction},
                      {"output", t.output},
                      {"molecule_slots", t.molecule_slots}});
    }
  }
  return {{"templates", std::move(list)}};
}

}  // namespace rxnlab
