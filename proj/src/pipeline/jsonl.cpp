#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "rxnlab/errors.hpp"
#include "rxnlab/parallel.hpp"
#include "rxnlab/pipeline.hpp"
#include "rxnlab/reaction.hpp"

namespace rxnlab {

namespace {

std::string safe_id(const nlohmann::json& record) {
  try {
    return record_id(record);
  } catch (const std::exception&) {
    return "";
  }
}

std::string describe(const RecordFailure& f) {
  std::string s = "line " + std::to_string(f.line);
  if (!f.id.empty()) s += " (id " + f.id + ")";
  return s + ": " + f.message;
}

std::optional<nlohmann::json> parse_line(const std::string& text, std::size_t line, RecordFailure& failure) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    failure = {line, "", "schema_error", std::string("invalid JSON: ") + e.what()};
    return std::nullopt;
  }
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

nlohmann::ordered_json to_json(const RecordFailure& f) {
  nlohmann::ordered_json j;
  j["line"] = f.line;
  j["id"] = f.id;
  j["kind"] = f.kind;
  j["error"] = f.message;
  return j;
}

std::string current_error_kind() {
  try {
    throw;
  } catch (const SyntaxError&) {
    return "syntax_error";
  } catch (const ChemistryError&) {
    return "chemistry_error";
  } catch (const SchemaError&) {
    return "schema_error";
  } catch (const InvalidArgument&) {
    return "invalid_argument";
  } catch (const IoError&) {
    return "io_error";
  } catch (const Error&) {
    return "chemistry_error";
  } catch (const nlohmann::json::exception&) {
    return "schema_error";
  } catch (...) {
    return "internal_error";
  }
}

StrictModeFailure::StrictModeFailure(RecordFailure f)
    : std::runtime_error(describe(f)), failure_(std::move(f)) {}

JsonlStats process_jsonl(std::istream& in, const std::vector<std::ostream*>& outs, const RecordFn& fn,
                         const JsonlOptions& options) {
  JsonlStats stats;
  std::size_t line_no = 0;
  std::string text;
  bool eof = false;
  while (!eof) {
    std::vector<std::pair<std::size_t, std::string>> batch;
    while (batch.size() < options.batch_size) {
      if (!std::getline(in, text)) {
        eof = true;
        break;
      }
      ++line_no;
      if (blank(text)) continue;
      batch.emplace_back(line_no, std::move(text));
    }
    struct Slot {
      Emitted lines;
      std::optional<RecordFailure> failure;
    };
    std::vector<Slot> slots(batch.size());
    parallel_for(batch.size(), options.workers, [&](std::size_t i) {
      const std::size_t line = batch[i].first;
      RecordFailure parse_failure;
      const auto record = parse_line(batch[i].second, line, parse_failure);
      if (!record) {
        slots[i].failure = parse_failure;
        return;
      }
      try {
        slots[i].lines = fn(*record, line);
      } catch (const std::exception& e) {
        slots[i].failure = RecordFailure{line, safe_id(*record), current_error_kind(), e.what()};
      }
    });
    for (Slot& slot : slots) {
      ++stats.records;
      if (slot.failure) {
        if (options.strict) throw StrictModeFailure(*slot.failure);
        stats.failures.push_back(std::move(*slot.failure));
        continue;
      }
      for (const auto& [stream, l] : slot.lines) {
        if (stream >= outs.size() || !outs[stream]) continue;
        *outs[stream] << l << '\n';
        if (stream == 0) ++stats.written;
      }
    }
  }
  for (std::ostream* o : outs) {
    if (o) o->flush();
  }
  return stats;
}

std::vector<std::pair<std::size_t, nlohmann::json>> read_jsonl(const std::string& path,
                                                                std::vector<RecordFailure>& failures,
                                                                bool strict) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw IoError("cannot open " + path);
    in = &file;
  }
  std::vector<std::pair<std::size_t, nlohmann::json>> records;
  std::string text;
  std::size_t line = 0;
  while (std::getline(*in, text)) {
    ++line;
    if (blank(text)) continue;
    RecordFailure failure;
    auto record = parse_line(text, line, failure);
    if (!record) {
      if (strict) throw StrictModeFailure(failure);
      failures.push_back(std::move(failure));
      continue;
    }
    records.emplace_back(line, std::move(*record));
  }
  return records;
}

int default_workers() {
  if (const char* env = std::getenv("RXNLAB_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
  }
  return 1;
}

}  // namespace rxnlab
