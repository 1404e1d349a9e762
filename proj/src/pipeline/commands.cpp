#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>

#include "rxnlab/corpus.hpp"
#include "rxnlab/errors.hpp"
#include "rxnlab/fingerprint.hpp"
#include "rxnlab/metrics.hpp"
#include "rxnlab/parallel.hpp"
#include "rxnlab/pipeline.hpp"
#include "rxnlab/reaction.hpp"
#include "rxnlab/scaffold.hpp"
#include "rxnlab/smiles.hpp"
#include "rxnlab/templates.hpp"

namespace rxnlab {

namespace {

using ojson = nlohmann::ordered_json;

class Config {
 public:
  explicit Config(const nlohmann::json& j) : j_(j) {
    if (!j_.is_object()) throw InvalidArgument("configuration must be a JSON object");
  }

  bool has(const char* key) const { return j_.contains(key) && !j_[key].is_null(); }

  std::string str(const char* key) const {
    if (!has(key)) throw InvalidArgument(std::string("missing required option \"") + key + "\"");
    return str(key, "");
  }

  std::string str(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    if (!j_[key].is_string()) throw InvalidArgument(std::string("option \"") + key + "\" must be a string");
    return j_[key].get<std::string>();
  }

  long long integer(const char* key, long long fallback) const {
    if (!has(key)) return fallback;
    if (!j_[key].is_number_integer()) throw InvalidArgument(std::string("option \"") + key + "\" must be an integer");
    return j_[key].get<long long>();
  }

  std::size_t positive(const char* key, std::size_t fallback) const {
    const long long v = integer(key, static_cast<long long>(fallback));
    if (v <= 0) throw InvalidArgument(std::string("option \"") + key + "\" must be positive");
    return static_cast<std::size_t>(v);
  }

  double number(const char* key, double fallback) const {
    if (!has(key)) return fallback;
    if (!j_[key].is_number()) throw InvalidArgument(std::string("option \"") + key + "\" must be a number");
    return j_[key].get<double>();
  }

  bool flag(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!j_[key].is_boolean()) throw InvalidArgument(std::string("option \"") + key + "\" must be a boolean");
    return j_[key].get<bool>();
  }

  const nlohmann::json& raw(const char* key) const { return j_[key]; }

  int workers() const {
    const long long w = integer("workers", default_workers());
    if (w <= 0) throw InvalidArgument("option \"workers\" must be positive");
    return static_cast<int>(w);
  }

  bool strict() const { return flag("strict", false); }

  JsonlOptions jsonl() const {
    JsonlOptions o;
    o.workers = workers();
    o.strict = strict();
    return o;
  }

 private:
  const nlohmann::json& j_;
};

class Input {
 public:
  explicit Input(const std::string& path) {
    if (path == "-") return;
    file_.open(path);
    if (!file_) throw IoError("cannot open " + path);
  }
  std::istream& stream() { return file_.is_open() ? static_cast<std::istream&>(file_) : std::cin; }

 private:
  std::ifstream file_;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw IoError("cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void close() {
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw IoError("error while writing output");
    } else {
      std::cout.flush();
    }
  }

 private:
  std::ofstream file_;
};

std::unique_ptr<Output> optional_output(const Config& c, const char* key) {
  if (!c.has(key)) return nullptr;
  return std::make_unique<Output>(c.str(key));
}

void write_document(const Config& c, const ojson& doc) {
  Output out(c.str("out", "-"));
  out.stream() << doc.dump() << '\n';
  out.close();
}

ojson failures_json(const std::vector<RecordFailure>& failures) {
  ojson a = ojson::array();
  for (const RecordFailure& f : failures) a.push_back(to_json(f));
  return a;
}

ojson summary(std::string_view command, std::size_t records, std::size_t written,
              const std::vector<RecordFailure>& failures) {
  ojson s;
  s["command"] = command;
  s["records"] = records;
  s["written"] = written;
  s["failed"] = failures.size();
  s["errors"] = failures_json(failures);
  return s;
}

// Records echo the input id, when there is one.
void put_id(ojson& out, const nlohmann::json& record) {
  if (record.is_object() && record.contains("id")) out["id"] = record_id(record);
}

std::string required_string(const nlohmann::json& record, const char* key) {
  if (!record.is_object() || !record.contains(key) || !record[key].is_string()) {
    throw SchemaError(std::string("record needs a string \"") + key + "\"");
  }
  return record[key].get<std::string>();
}

struct FingerprintConfig {
  std::unique_ptr<KeyTable> table;
  FingerprintSpec spec;
};

FingerprintConfig fingerprint_config(const Config& c, FingerprintKind fallback) {
  FingerprintConfig f;
  const FingerprintKind kind =
      c.has("kind") ? parse_fingerprint_kind(c.str("kind")) : fallback;
  switch (kind) {
    case FingerprintKind::Circular: {
      const long long radius = c.integer("radius", 2);
      if (radius < 0) throw InvalidArgument("option \"radius\" must be non-negative");
      f.spec = FingerprintSpec::circular(static_cast<int>(radius), c.positive("width", 2048));
      break;
    }
    case FingerprintKind::Path:
      f.spec = FingerprintSpec::path(static_cast<int>(c.integer("min_path", 1)),
                                     static_cast<int>(c.integer("max_path", 7)), c.positive("width", 2048));
      break;
    case FingerprintKind::Key:
      if (c.has("key_table")) f.table = std::make_unique<KeyTable>(KeyTable::load(c.str("key_table")));
      f.spec = FingerprintSpec::key(f.table.get());
      break;
  }
  return f;
}

Molecule record_molecule(const nlohmann::json& record) { return parse_smiles(required_string(record, "smiles")); }

ojson run_simple(std::string_view command, const Config& c, const RecordFn& fn) {
  Input in(c.str("in", "-"));
  Output out(c.str("out", "-"));
  const JsonlStats stats = process_jsonl(in.stream(), {&out.stream()}, fn, c.jsonl());
  out.close();
  return summary(command, stats.records, stats.written, stats.failures);
}

ojson cmd_canon(const Config& c) {
  return run_simple("canon", c, [](const nlohmann::json& r, std::size_t) {
    ojson o;
    put_id(o, r);
    o["smiles"] = canonical_smiles(record_molecule(r));
    return Emitted{{0, o.dump()}};
  });
}

ojson cmd_validate(const Config& c) {
  return run_simple("validate", c, [](const nlohmann::json& r, std::size_t) {
    const std::string smiles = required_string(r, "smiles");
    const Validation v = validate(smiles);
    ojson o;
    put_id(o, r);
    o["smiles"] = smiles;
    o["verdict"] = to_string(v.verdict);
    if (v.verdict != Verdict::Valid) o["detail"] = v.detail;
    return Emitted{{0, o.dump()}};
  });
}

ojson cmd_fp(const Config& c) {
  const FingerprintConfig f = fingerprint_config(c, FingerprintKind::Circular);
  const bool scaffold = c.flag("scaffold", false);
  return run_simple("fp", c, [&](const nlohmann::json& r, std::size_t) {
    const Molecule mol = record_molecule(r);
    ojson o;
    put_id(o, r);
    o["kind"] = to_string(f.spec.kind);
    o["fingerprint"] = (scaffold ? scaffold_fingerprint(mol, f.spec) : fingerprint(mol, f.spec)).to_string();
    return Emitted{{0, o.dump()}};
  });
}

ojson cmd_sim(const Config& c) {
  const FingerprintConfig f = fingerprint_config(c, FingerprintKind::Circular);
  std::optional<BitFingerprint> query;
  if (c.has("query")) query = fingerprint(parse_smiles(c.str("query")), f.spec);
  return run_simple("sim", c, [&](const nlohmann::json& r, std::size_t) {
    ojson o;
    put_id(o, r);
    if (query) {
      o["tanimoto"] = tanimoto(*query, fingerprint(record_molecule(r), f.spec));
    } else {
      const BitFingerprint a = fingerprint(parse_smiles(required_string(r, "a")), f.spec);
      const BitFingerprint b = fingerprint(parse_smiles(required_string(r, "b")), f.spec);
      o["tanimoto"] = tanimoto(a, b);
    }
    return Emitted{{0, o.dump()}};
  });
}

ojson cmd_scaffold(const Config& c) {
  return run_simple("scaffold", c, [](const nlohmann::json& r, std::size_t) {
    ojson o;
    put_id(o, r);
    if (r.is_object() && r.contains("rxn")) {
      const ReactionRecord rec = parse_reaction_record(r);
      o["scaffold"] = murcko_scaffold(principal_molecule(rec.reaction));
    } else {
      o["scaffold"] = murcko_scaffold(record_molecule(r));
    }
    return Emitted{{0, o.dump()}};
  });
}

// Parses a reaction file on the worker pool, keeping input order.
struct ParsedReactions {
  std::vector<ReactionRecord> records;
  std::vector<std::string> raw;
  std::vector<std::size_t> lines;
  std::vector<RecordFailure> failures;
};

ParsedReactions read_reactions(const std::string& path, const Config& c) {
  ParsedReactions out;
  const auto rows = read_jsonl(path, out.failures, c.strict());
  std::vector<std::optional<ReactionRecord>> parsed(rows.size());
  std::vector<std::optional<RecordFailure>> failed(rows.size());
  parallel_for(rows.size(), c.workers(), [&](std::size_t i) {
    try {
      parsed[i] = parse_reaction_record(rows[i].second);
    } catch (const std::exception& e) {
      std::string id;
      try {
        id = record_id(rows[i].second);
      } catch (const std::exception&) {
      }
      failed[i] = RecordFailure{rows[i].first, id, current_error_kind(), e.what()};
    }
  });
  std::vector<RecordFailure> ordered = std::move(out.failures);
  out.failures.clear();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (failed[i]) {
      if (c.strict()) throw StrictModeFailure(*failed[i]);
      ordered.push_back(std::move(*failed[i]));
      continue;
    }
    out.records.push_back(std::move(*parsed[i]));
    out.raw.push_back(rows[i].second.dump());
    out.lines.push_back(rows[i].first);
  }
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const RecordFailure& a, const RecordFailure& b) { return a.line < b.line; });
  out.failures = std::move(ordered);
  return out;
}

std::vector<RecordFailure> tagged(std::vector<RecordFailure> failures, const std::string& file) {
  for (RecordFailure& f : failures) f.message = file + ": " + f.message;
  return failures;
}

ojson cmd_split(const Config& c) {
  SplitOptions opt;
  opt.low = c.number("low", 0.5);
  opt.high = c.number("high", 0.6);
  if (!(opt.low >= 0.0 && opt.high <= 1.0 && opt.low <= opt.high)) {
    throw InvalidArgument("band must satisfy 0 <= low <= high <= 1");
  }
  opt.n = c.positive("n", 1000);
  const FingerprintConfig f = fingerprint_config(c, FingerprintKind::Circular);
  opt.fingerprint = f.spec;
  opt.merge_agents = c.flag("merge_agents", false);
  opt.workers = c.workers();

  const std::string in_path = c.str("in");
  const std::string train_path = c.str("train");
  ParsedReactions candidates = read_reactions(in_path, c);
  ParsedReactions train = read_reactions(train_path, c);
  const SplitReport report = resample_test_set(candidates.records, train.records, opt);
  write_document(c, to_json(report));

  if (auto selected = optional_output(c, "selected_out")) {
    std::map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < candidates.records.size(); ++i) by_id.emplace(candidates.records[i].id, i);
    for (const SplitSelection& s : report.selected) selected->stream() << candidates.raw[by_id.at(s.id)] << '\n';
    selected->close();
  }
  std::vector<RecordFailure> failures = tagged(std::move(candidates.failures), "in");
  for (RecordFailure& f : tagged(std::move(train.failures), "train")) failures.push_back(std::move(f));
  ojson s = summary("split", candidates.records.size() + train.records.size() + failures.size(),
                    report.delivered_n, failures);
  s["delivered_n"] = report.delivered_n;
  return s;
}

ojson cmd_leakcheck(const Config& c) {
  if (!c.has("splits") || !c.raw("splits").is_array() || c.raw("splits").size() < 2) {
    throw InvalidArgument("leakcheck needs at least two splits ([{\"name\", \"path\"}])");
  }
  const bool merge = c.flag("merge_agents", false);
  std::vector<NamedSplit> splits;
  std::vector<RecordError> errors;
  std::set<std::string> names;
  std::size_t records = 0;
  for (const auto& entry : c.raw("splits")) {
    if (!entry.is_object() || !entry.contains("name") || !entry.contains("path") || !entry["name"].is_string() ||
        !entry["path"].is_string()) {
      throw InvalidArgument("each split needs string \"name\" and \"path\"");
    }
    NamedSplit split;
    split.name = entry["name"].get<std::string>();
    if (!names.insert(split.name).second) throw InvalidArgument("duplicate split name '" + split.name + "'");
    ParsedReactions parsed = read_reactions(entry["path"].get<std::string>(), c);
    std::vector<std::string> keys(parsed.records.size());
    parallel_for(parsed.records.size(), c.workers(),
                 [&](std::size_t i) { keys[i] = reaction_key(parsed.records[i].reaction, merge); });
    for (std::size_t i = 0; i < parsed.records.size(); ++i) {
      split.records.push_back({parsed.records[i].id, std::move(keys[i])});
    }
    for (const RecordFailure& f : parsed.failures) errors.push_back({split.name, f.line, f.id, f.message});
    records += parsed.records.size() + parsed.failures.size();
    splits.push_back(std::move(split));
  }
  LeakReport report = detect_leakage(splits);
  report.errors = std::move(errors);
  write_document(c, to_json(report));
  ojson s = summary("leakcheck", records, report.pairs.size(), {});
  s["failed"] = report.errors.size();
  s["pairs"] = report.pairs.size();
  return s;
}

InterleaveLimits limits_from(const Config& c) {
  InterleaveLimits l;
  l.max_entities = c.positive("max_entities", l.max_entities);
  l.max_tokens = c.positive("max_tokens", l.max_tokens);
  return l;
}

ojson rejection_line(const nlohmann::json& r, std::size_t line, const InterleaveResult& res) {
  ojson o;
  o["line"] = line;
  put_id(o, r);
  o["reason"] = to_string(res.rejection);
  o["detail"] = res.detail;
  return o;
}

// Shared driver for interleave, caption and stats.
ojson run_corpus(std::string_view command, const Config& c, bool caption, bool write_records) {
  const InterleaveLimits limits = limits_from(c);
  const auto tokenizer = make_tokenizer(c.str("tokenizer", "default"));
  Input in(c.str("in", "-"));
  std::unique_ptr<Output> out;
  if (write_records) out = std::make_unique<Output>(c.str("out", "-"));
  auto rejected = optional_output(c, "rejected");
  CorpusStats stats;
  std::mutex stats_mutex;
  const JsonlStats js = process_jsonl(
      in.stream(), {out ? &out->stream() : nullptr, rejected ? &rejected->stream() : nullptr},
      [&](const nlohmann::json& r, std::size_t line) {
        const InterleaveResult res = caption ? build_caption_record(r, limits, *tokenizer)
                                             : build_interleaved(parse_procedure(r), limits, *tokenizer);
        {
          const std::lock_guard<std::mutex> lock(stats_mutex);
          stats.add(res);
        }
        if (res.record) return Emitted{{0, to_json(*res.record).dump()}};
        return Emitted{{1, rejection_line(r, line, res).dump()}};
      },
      c.jsonl());
  for (std::size_t i = 0; i < js.failures.size(); ++i) stats.add_malformed();
  if (out) out->close();
  if (rejected) rejected->close();
  if (!write_records) {
    write_document(c, stats.to_json());
  } else if (auto s = optional_output(c, "stats")) {
    s->stream() << stats.to_json().dump() << '\n';
    s->close();
  }
  ojson s = summary(command, js.records, write_records ? js.written : 0, js.failures);
  s["kept"] = stats.kept();
  return s;
}

ojson cmd_nameconv(const Config& c) {
  return run_simple("corpus.nameconv", c, [](const nlohmann::json& r, std::size_t) {
    Emitted lines;
    for (const NameConversionRecord& rec : build_name_conversion(parse_name_entry(r))) {
      lines.emplace_back(0, to_json(rec).dump());
    }
    return lines;
  });
}

ojson cmd_render(const Config& c) {
  TemplateRegistry registry = TemplateRegistry::builtin();
  if (c.has("templates")) registry = registry.merged(TemplateRegistry::load(c.str("templates")));
  const std::string mode_name = c.str("mode", "smiles");
  if (mode_name != "smiles" && mode_name != "sentinel") {
    throw InvalidArgument("option \"mode\" must be smiles or sentinel");
  }
  const MoleculeMode mode = mode_name == "smiles" ? MoleculeMode::Smiles : MoleculeMode::Sentinel;
  const auto seed = static_cast<std::uint64_t>(c.integer("seed", 0));
  return run_simple("render", c, [&](const nlohmann::json& r, std::size_t line) {
    const std::string task = required_string(r, "task");
    if (!r.contains("bindings")) throw SchemaError("record needs \"bindings\"");
    const std::string key = r.contains("id") ? record_id(r) : std::to_string(line);
    const TaskTemplate& tmpl = registry.choose(task, seed, key);
    ojson o;
    put_id(o, r);
    const ojson prompt = to_json(render(tmpl, parse_bindings(r["bindings"]), mode));
    for (const auto& [k, v] : prompt.items()) o[k] = v;
    return Emitted{{0, o.dump()}};
  });
}

// References in file order, each joined with its prediction by id.
struct JoinedPair {
  nlohmann::json ref;
  nlohmann::json pred;
  std::size_t line;  // of the reference
};

struct Joined {
  std::vector<JoinedPair> pairs;
  std::vector<RecordFailure> failures;
  std::size_t records = 0;
};

Joined join_files(const Config& c) {
  Joined out;
  std::vector<RecordFailure> pred_failures;
  std::vector<RecordFailure> ref_failures;
  const auto preds = read_jsonl(c.str("pred"), pred_failures, c.strict());
  const auto refs = read_jsonl(c.str("ref"), ref_failures, c.strict());
  auto fail = [&](std::vector<RecordFailure>& bucket, RecordFailure f) {
    if (c.strict()) throw StrictModeFailure(f);
    bucket.push_back(std::move(f));
  };
  std::map<std::string, std::size_t> pred_by_id;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    try {
      const std::string id = record_id(preds[i].second);
      if (!pred_by_id.emplace(id, i).second) {
        fail(pred_failures, {preds[i].first, id, "schema_error", "duplicate prediction id"});
      }
    } catch (const SchemaError& e) {
      fail(pred_failures, {preds[i].first, "", "schema_error", e.what()});
    }
  }
  std::set<std::string> ref_ids;
  std::set<std::string> used;
  for (const auto& [line, ref] : refs) {
    std::string id;
    try {
      id = record_id(ref);
    } catch (const SchemaError& e) {
      fail(ref_failures, {line, "", "schema_error", e.what()});
      continue;
    }
    if (!ref_ids.insert(id).second) {
      fail(ref_failures, {line, id, "schema_error", "duplicate reference id"});
      continue;
    }
    const auto it = pred_by_id.find(id);
    if (it == pred_by_id.end()) {
      fail(ref_failures, {line, id, "schema_error", "no prediction for this id"});
      continue;
    }
    used.insert(id);
    out.pairs.push_back({ref, preds[it->second].second, line});
  }
  for (const auto& [id, idx] : pred_by_id) {
    if (!used.count(id) && !ref_ids.count(id)) {
      fail(pred_failures, {preds[idx].first, id, "schema_error", "prediction has no reference"});
    }
  }
  out.records = refs.size();
  out.failures = tagged(std::move(ref_failures), "ref");
  for (RecordFailure& f : tagged(std::move(pred_failures), "pred")) out.failures.push_back(std::move(f));
  return out;
}

ojson finish_eval(std::string_view command, const Config& c, MetricReport report, const Joined& joined,
                  std::vector<RecordFailure> more = {}) {
  for (const RecordFailure& f : joined.failures) report.errors.emplace_back(f.id, f.message);
  for (const RecordFailure& f : more) report.errors.emplace_back(f.id, f.message);
  write_document(c, report.to_json());
  std::vector<RecordFailure> all = joined.failures;
  for (RecordFailure& f : more) all.push_back(std::move(f));
  return summary(command, joined.records, 1, all);
}

ojson cmd_eval_gen(const Config& c) {
  const Joined joined = join_files(c);
  std::vector<GenSample> samples;
  std::vector<RecordFailure> bad;
  for (const auto& [ref, pred, line] : joined.pairs) {
    try {
      GenSample s;
      s.id = record_id(ref);
      s.reference = required_string(ref, "reference");
      s.prediction = required_string(pred, "prediction");
      s.task = ref.contains("task") && ref["task"].is_string() ? ref["task"].get<std::string>() : "";
      samples.push_back(std::move(s));
    } catch (const SchemaError& e) {
      RecordFailure f{line, record_id(ref), "schema_error", e.what()};
      if (c.strict()) throw StrictModeFailure(f);
      bad.push_back(std::move(f));
    }
  }
  GenFingerprints fps;
  std::unique_ptr<KeyTable> table;
  if (c.has("key_table")) {
    table = std::make_unique<KeyTable>(KeyTable::load(c.str("key_table")));
    fps.key = FingerprintSpec::key(table.get());
  }
  if (c.has("width")) {
    fps.path.width = c.positive("width", 2048);
    fps.circular.width = fps.path.width;
  }
  fps.circular.radius = static_cast<int>(c.integer("radius", 2));
  std::vector<GenSampleResult> detail;
  MetricReport report = eval_generation(samples, fps, c.workers(), &detail);
  if (c.strict() && !report.errors.empty()) {
    throw StrictModeFailure({0, report.errors.front().first, "chemistry_error", report.errors.front().second});
  }
  if (auto d = optional_output(c, "detail")) {
    for (const GenSampleResult& r : detail) d->stream() << to_json(r).dump() << '\n';
    d->close();
  }
  return finish_eval("eval.gen", c, std::move(report), joined, std::move(bad));
}

std::string label_of(const nlohmann::json& record, const char* key) {
  if (!record.contains(key)) throw SchemaError(std::string("record needs \"") + key + "\"");
  const auto& v = record[key];
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw SchemaError(std::string("\"") + key + "\" must be a string or integer label");
}

bool is_index_label(const std::string& s) {
  return !s.empty() && s.size() < 9 && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
}

ojson cmd_eval_cls(const Config& c) {
  const Joined joined = join_files(c);
  std::vector<std::pair<std::string, std::string>> labels;
  std::vector<RecordFailure> bad;
  for (const auto& [ref, pred, line] : joined.pairs) {
    try {
      labels.emplace_back(label_of(ref, "reference"), label_of(pred, "prediction"));
    } catch (const SchemaError& e) {
      RecordFailure f{line, record_id(ref), "schema_error", e.what()};
      if (c.strict()) throw StrictModeFailure(f);
      bad.push_back(std::move(f));
    }
  }
  // Integer labels index the classes directly; anything else is mapped by
  // sorted label text.
  bool numeric = true;
  std::set<std::string> names;
  for (const auto& [g, p] : labels) {
    numeric = numeric && is_index_label(g) && is_index_label(p);
    names.insert(g);
    names.insert(p);
  }
  std::vector<std::pair<int, int>> pairs;
  int n_classes = static_cast<int>(c.integer("n_classes", 0));
  if (numeric) {
    int max_label = -1;
    for (const auto& [g, p] : labels) {
      pairs.emplace_back(std::stoi(g), std::stoi(p));
      max_label = std::max({max_label, pairs.back().first, pairs.back().second});
    }
    if (c.has("n_classes") && max_label >= n_classes) {
      throw InvalidArgument("label " + std::to_string(max_label) + " outside n_classes");
    }
    n_classes = std::max(n_classes, max_label + 1);
  } else {
    std::map<std::string, int> index;
    for (const std::string& n : names) index.emplace(n, static_cast<int>(index.size()));
    for (const auto& [g, p] : labels) pairs.emplace_back(index.at(g), index.at(p));
    if (c.has("n_classes") && static_cast<int>(index.size()) > n_classes) {
      throw InvalidArgument("more distinct labels than n_classes");
    }
    n_classes = std::max(n_classes, static_cast<int>(index.size()));
  }
  n_classes = std::max(n_classes, 2);
  return finish_eval("eval.cls", c, eval_classification(pairs, n_classes), joined, std::move(bad));
}

double number_of(const nlohmann::json& record, const char* key) {
  if (!record.contains(key)) throw SchemaError(std::string("record needs \"") + key + "\"");
  const auto& v = record[key];
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t used = 0;
    try {
      const double d = std::stod(s, &used);
      if (used == s.size() && std::isfinite(d)) return d;
    } catch (const std::exception&) {
    }
  }
  throw SchemaError(std::string("\"") + key + "\" must be a number");
}

ojson cmd_eval_reg(const Config& c) {
  const Joined joined = join_files(c);
  std::vector<double> golds;
  std::vector<double> preds;
  std::vector<RecordFailure> bad;
  for (const auto& [ref, pred, line] : joined.pairs) {
    try {
      const double g = number_of(ref, "reference");
      const double p = number_of(pred, "prediction");
      golds.push_back(g);
      preds.push_back(p);
    } catch (const SchemaError& e) {
      RecordFailure f{line, record_id(ref), "schema_error", e.what()};
      if (c.strict()) throw StrictModeFailure(f);
      bad.push_back(std::move(f));
    }
  }
  return finish_eval("eval.reg", c, eval_regression(golds, preds), joined, std::move(bad));
}

ojson cmd_eval_sel(const Config& c) {
  const Joined joined = join_files(c);
  std::vector<SelectionSample> samples;
  std::vector<RecordFailure> bad;
  bool all_ranked = true;
  for (const auto& [ref, pred, line] : joined.pairs) {
    try {
      SelectionSample s;
      s.id = record_id(ref);
      s.gold = required_string(ref, "reference");
      s.prediction = required_string(pred, "prediction");
      if (!ref.contains("candidates") || !ref["candidates"].is_array()) {
        throw SchemaError("reference needs a \"candidates\" array");
      }
      for (const auto& cand : ref["candidates"]) {
        if (!cand.is_string()) throw SchemaError("candidates must be strings");
        s.candidates.push_back(cand.get<std::string>());
      }
      if (ref.contains("yield_ranks")) {
        const auto& ranks = ref["yield_ranks"];
        if (ranks.is_array()) {
          if (ranks.size() != s.candidates.size()) throw SchemaError("yield_ranks must align with candidates");
          for (std::size_t k = 0; k < ranks.size(); ++k) {
            if (!ranks[k].is_number_integer()) throw SchemaError("yield ranks must be integers");
            s.yield_ranks[s.candidates[k]] = ranks[k].get<int>();
          }
        } else if (ranks.is_object()) {
          for (const auto& [cand, rank] : ranks.items()) {
            if (!rank.is_number_integer()) throw SchemaError("yield ranks must be integers");
            s.yield_ranks[cand] = rank.get<int>();
          }
        } else {
          throw SchemaError("yield_ranks must be an array or object");
        }
      } else {
        all_ranked = false;
      }
      samples.push_back(std::move(s));
    } catch (const SchemaError& e) {
      RecordFailure f{line, record_id(ref), "schema_error", e.what()};
      if (c.strict()) throw StrictModeFailure(f);
      bad.push_back(std::move(f));
    }
  }
  const bool top50 = c.flag("top50", all_ranked && !samples.empty());
  return finish_eval("eval.sel", c, eval_selection(samples, top50), joined, std::move(bad));
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "canon",  "validate",         "fp",       "sim",     "scaffold", "split",   "leakcheck",
      "corpus.interleave", "corpus.nameconv", "corpus.caption", "render", "eval.gen", "eval.cls",
      "eval.reg", "eval.sel", "stats"};
  return names;
}

nlohmann::ordered_json run_command(std::string_view command, const nlohmann::json& config) {
  const Config c(config);
  if (command == "canon") return cmd_canon(c);
  if (command == "validate") return cmd_validate(c);
  if (command == "fp") return cmd_fp(c);
  if (command == "sim") return cmd_sim(c);
  if (command == "scaffold") return cmd_scaffold(c);
  if (command == "split") return cmd_split(c);
  if (command == "leakcheck") return cmd_leakcheck(c);
  if (command == "corpus.interleave") return run_corpus(command, c, false, true);
  if (command == "corpus.caption") return run_corpus(command, c, true, true);
  if (command == "stats") return run_corpus(command, c, false, false);
  if (command == "corpus.nameconv") return cmd_nameconv(c);
  if (command == "render") return cmd_render(c);
  if (command == "eval.gen") return cmd_eval_gen(c);
  if (command == "eval.cls") return cmd_eval_cls(c);
  if (command == "eval.reg") return cmd_eval_reg(c);
  if (command == "eval.sel") return cmd_eval_sel(c);
  throw InvalidArgument("unknown command '" + std::string(command) + "'");
}

}  // namespace rxnlab
