#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace rxnlab {

/// One rejected input record.
struct RecordFailure {
  std::size_t line = 0;
  std::string id;
  std::string kind;  // syntax_error, chemistry_error, schema_error, ...
  std::string message;
};

nlohmann::ordered_json to_json(const RecordFailure& f);

/// Error category name of the exception currently being handled.
std::string current_error_kind();

/// Thrown in strict mode for the first failing record.
class StrictModeFailure : public std::runtime_error {
 public:
  explicit StrictModeFailure(RecordFailure f);
  const RecordFailure& failure() const noexcept { return failure_; }

 private:
  RecordFailure failure_;
};

struct JsonlOptions {
  int workers = 1;
  bool strict = false;
  std::size_t batch_size = 4096;
};

/// Output lines of one record, each tagged with its stream index.
using Emitted = std::vector<std::pair<std::size_t, std::string>>;

/// Per-record transform.
using RecordFn = std::function<Emitted(const nlohmann::json& record, std::size_t line)>;

struct JsonlStats {
  std::size_t records = 0;
  std::size_t written = 0;
  std::vector<RecordFailure> failures;
};

/// Reads JSONL from `in`, applies fn on up to options.workers threads and
/// writes the results in input order; a line tagged k goes to outs[k]
/// (dropped when outs[k] is null). Blank lines are skipped. A record whose
/// fn throws is reported in the failures (or raises StrictModeFailure).
/// Output is independent of the worker count.
JsonlStats process_jsonl(std::istream& in, const std::vector<std::ostream*>& outs, const RecordFn& fn,
                         const JsonlOptions& options);

/// Reads every record of a JSONL file; malformed lines become failures.
/// Each element is (line number, record).
std::vector<std::pair<std::size_t, nlohmann::json>> read_jsonl(const std::string& path,
                                                                std::vector<RecordFailure>& failures,
                                                                bool strict);

/// Default worker count: RXNLAB_WORKERS when set to a positive integer, else 1.
int default_workers();

/// Runs one subcommand ("canon", "validate", "fp", "sim", "scaffold", "split",
/// "leakcheck", "corpus.interleave", "corpus.nameconv", "corpus.caption",
/// "render", "eval.gen", "eval.cls", "eval.reg", "eval.sel", "stats") with
/// a JSON configuration. Returns a summary object that holds the counts and
/// any per-record failures. Paths of "-" mean stdin/stdout.
nlohmann::ordered_json run_command(std::string_view command, const nlohmann::json& config);

/// The recognised command names.
const std::vector<std::string>& command_names();

}  // namespace rxnlab
