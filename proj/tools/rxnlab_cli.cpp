#include <cstdio>
#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rxnlab/rxnlab.h"

namespace {

using json = nlohmann::json;

int report_error(const std::string& kind, const std::string& message) {
  nlohmann::ordered_json e;
  e["error"] = {{"kind", kind}, {"message", message}};
  std::cerr << e.dump() << '\n';
  return 1;
}

// Options whose values go into the run configuration under a given key.
class Bindings {
 public:
  void text(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    auto& slot = strings_.emplace_back();
    opts_.push_back({app, app->add_option(flag, slot, help), key, Kind::Text, &slot, nullptr, nullptr});
  }
  void integer(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    auto& slot = ints_.emplace_back();
    opts_.push_back({app, app->add_option(flag, slot, help), key, Kind::Int, nullptr, &slot, nullptr});
  }
  void number(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    auto& slot = doubles_.emplace_back();
    opts_.push_back({app, app->add_option(flag, slot, help), key, Kind::Double, nullptr, nullptr, &slot});
  }
  void flag(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    opts_.push_back({app, app->add_flag(flag, help), key, Kind::Flag, nullptr, nullptr, nullptr});
  }

  // Writes every given option of `app` into config.
  void apply(const CLI::App* app, json& config) const {
    for (const Opt& o : opts_) {
      if (o.app != app || o.option->count() == 0) continue;
      switch (o.kind) {
        case Kind::Text: config[o.key] = *o.s; break;
        case Kind::Int: config[o.key] = *o.i; break;
        case Kind::Double: config[o.key] = *o.d; break;
        case Kind::Flag: config[o.key] = true; break;
      }
    }
  }

 private:
  enum class Kind { Text, Int, Double, Flag };
  struct Opt {
    const CLI::App* app;
    CLI::Option* option;
    std::string key;
    Kind kind;
    std::string* s;
    long long* i;
    double* d;
  };
  std::deque<std::string> strings_;
  std::deque<long long> ints_;
  std::deque<double> doubles_;
  std::vector<Opt> opts_;
};

void common(Bindings& b, CLI::App* app, bool io = true) {
  if (io) {
    b.text(app, "--in", "in", "Input JSONL ('-' for stdin)");
    b.text(app, "--out", "out", "Output path ('-' for stdout)");
  }
  b.integer(app, "--workers", "workers", "Worker threads (default: RXNLAB_WORKERS or 1)");
  b.flag(app, "--strict", "strict", "Stop at the first failing record");
}

void fingerprint_flags(Bindings& b, CLI::App* app) {
  b.text(app, "--kind", "kind", "circular, path or key");
  b.integer(app, "--radius", "radius", "Circular radius");
  b.integer(app, "--width", "width", "Fingerprint width in bits");
  b.integer(app, "--min-path", "min_path", "Shortest path in bonds");
  b.integer(app, "--max-path", "max_path", "Longest path in bonds");
  b.text(app, "--key-table", "key_table", "Structural key table (TSV)");
}

void corpus_flags(Bindings& b, CLI::App* app) {
  b.integer(app, "--max-entities", "max_entities", "Entity limit per record (20)");
  b.integer(app, "--max-tokens", "max_tokens", "Token limit per record (1024)");
  b.text(app, "--tokenizer", "tokenizer", "default or whitespace");
  b.text(app, "--rejected", "rejected", "JSONL of rejected records with reasons");
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  json j = json::parse(in);
  if (!j.is_object()) throw std::runtime_error("config must be a JSON object");
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Molecule and reaction dataset toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rxl_version()));
  std::string config_path;
  app.add_option("--config", config_path, "JSON config; flags override its values");
  bool verbose = false;
  app.add_flag("--verbose", verbose, "Always print the run summary to stderr");

  Bindings b;
  std::vector<std::pair<CLI::App*, std::string>> commands;
  auto simple = [&](const std::string& name, const std::string& help, const std::string& command) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(b, sub);
    commands.emplace_back(sub, command);
    return sub;
  };

  simple("canon", "Canonical SMILES per record", "canon");
  simple("validate", "Validity verdict per record", "validate");
  CLI::App* fp = simple("fp", "Fingerprint per record", "fp");
  fingerprint_flags(b, fp);
  b.flag(fp, "--scaffold", "scaffold", "Fingerprint the Murcko scaffold");
  CLI::App* sim = simple("sim", "Tanimoto similarity of {a, b} pairs or against --query", "sim");
  fingerprint_flags(b, sim);
  b.text(sim, "--query", "query", "Query SMILES compared with every record's smiles");
  simple("scaffold", "Murcko scaffold per record", "scaffold");

  CLI::App* split = simple("split", "Scaffold-similarity test set resampling", "split");
  fingerprint_flags(b, split);
  b.text(split, "--train", "train", "Training reactions JSONL");
  std::string band;
  split->add_option("--band", band, "Similarity band low:high (0.5:0.6)");
  b.integer(split, "--n", "n", "Requested test set size (1000)");
  b.flag(split, "--merge-agents", "merge_agents", "Treat reagents as reactants in reaction keys");
  b.text(split, "--selected-out", "selected_out", "JSONL of the selected candidate records");

  CLI::App* leak = app.add_subcommand("leakcheck", "Duplicate reactions across splits");
  common(b, leak, false);
  b.text(leak, "--out", "out", "Report path ('-' for stdout)");
  std::vector<std::string> split_args;
  leak->add_option("--split", split_args, "name=path, repeated for every split");
  b.flag(leak, "--merge-agents", "merge_agents", "Treat reagents as reactants in reaction keys");
  commands.emplace_back(leak, "leakcheck");

  CLI::App* corpus = app.add_subcommand("corpus", "Corpus construction");
  corpus->require_subcommand(1);
  CLI::App* inter = corpus->add_subcommand("interleave", "Interleaved molecule-text records");
  common(b, inter);
  corpus_flags(b, inter);
  b.text(inter, "--stats", "stats", "Statistics report path");
  commands.emplace_back(inter, "corpus.interleave");
  CLI::App* caption = corpus->add_subcommand("caption", "Caption pairs as [mol, text] records");
  common(b, caption);
  corpus_flags(b, caption);
  b.text(caption, "--stats", "stats", "Statistics report path");
  commands.emplace_back(caption, "corpus.caption");
  CLI::App* nameconv = corpus->add_subcommand("nameconv", "Name-conversion task records");
  common(b, nameconv);
  commands.emplace_back(nameconv, "corpus.nameconv");

  CLI::App* stats = simple("stats", "Filter statistics of a procedure stream", "stats");
  corpus_flags(b, stats);

  CLI::App* render = simple("render", "Render instruction prompts", "render");
  b.text(render, "--mode", "mode", "smiles or sentinel");
  b.text(render, "--templates", "templates", "Extra template registry (JSON)");
  b.integer(render, "--seed", "seed", "Seed for choosing among template variants");

  CLI::App* eval = app.add_subcommand("eval", "Evaluation metrics");
  eval->require_subcommand(1);
  auto eval_sub = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = eval->add_subcommand(name, help);
    common(b, sub, false);
    b.text(sub, "--pred", "pred", "Predictions JSONL {id, prediction}");
    b.text(sub, "--ref", "ref", "References JSONL {id, reference, ...}");
    b.text(sub, "--out", "out", "Report path ('-' for stdout)");
    commands.emplace_back(sub, "eval." + name);
    return sub;
  };
  CLI::App* gen = eval_sub("gen", "Molecule generation metrics");
  b.text(gen, "--detail", "detail", "Per-sample detail JSONL");
  b.text(gen, "--key-table", "key_table", "Structural key table (TSV)");
  b.integer(gen, "--width", "width", "Path and circular fingerprint width");
  b.integer(gen, "--radius", "radius", "Circular radius");
  CLI::App* cls = eval_sub("cls", "Classification metrics");
  b.integer(cls, "--n-classes", "n_classes", "Number of classes");
  eval_sub("reg", "Regression metrics");
  CLI::App* sel = eval_sub("sel", "Selection metrics");
  bool top50 = false;
  bool no_top50 = false;
  sel->add_flag("--top50", top50, "Require yield ranks and report top-50% accuracy");
  sel->add_flag("--no-top50", no_top50, "Report top-1 only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage_error", e.what());
  }

  const std::pair<CLI::App*, std::string>* chosen = nullptr;
  for (const auto& c : commands) {
    if (c.first->parsed()) chosen = &c;
  }
  if (!chosen) return report_error("usage_error", "a subcommand is required");

  json config = json::object();
  try {
    if (!config_path.empty()) config = load_config(config_path);
  } catch (const std::exception& e) {
    return report_error("invalid_argument", e.what());
  }
  b.apply(chosen->first, config);
  if (!band.empty()) {
    const auto colon = band.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
      std::size_t used = 0;
      const std::string lo = band.substr(0, colon);
      const std::string hi = band.substr(colon + 1);
      config["low"] = std::stod(lo, &used);
      if (used != lo.size()) throw std::invalid_argument("low");
      config["high"] = std::stod(hi, &used);
      if (used != hi.size()) throw std::invalid_argument("high");
    } catch (const std::exception&) {
      return report_error("usage_error", "--band must look like 0.5:0.6");
    }
  }
  if (!split_args.empty()) {
    json splits = json::array();
    for (const std::string& s : split_args) {
      const auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
        return report_error("usage_error", "--split must look like name=path");
      }
      splits.push_back({{"name", s.substr(0, eq)}, {"path", s.substr(eq + 1)}});
    }
    config["splits"] = std::move(splits);
  }
  if (top50 && no_top50) return report_error("usage_error", "--top50 and --no-top50 exclude each other");
  if (top50 || no_top50) config["top50"] = top50;

  char* summary = nullptr;
  const rxl_status status = rxl_run(chosen->second.c_str(), config.dump().c_str(), &summary);
  int code = 0;
  if (status != RXL_OK) {
    nlohmann::ordered_json e;
    e["error"] = {{"kind", rxl_status_name(status)}, {"message", rxl_last_error()}};
    if (summary) e["summary"] = nlohmann::ordered_json::parse(summary);
    std::cerr << e.dump() << '\n';
    code = status == RXL_ERR_STRICT ? 2 : 1;
  } else if (summary) {
    const auto s = nlohmann::ordered_json::parse(summary);
    if (verbose || s.value("failed", 0) > 0) std::cerr << s.dump() << '\n';
  }
  rxl_string_free(summary);
  return code;
}
