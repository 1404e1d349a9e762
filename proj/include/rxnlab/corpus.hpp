#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rxnlab/graph_record.hpp"

namespace rxnlab {

/// Counts tokens in a text fragment.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::size_t count(std::string_view text) const = 0;
  virtual std::string_view name() const = 0;
};

/// Whitespace-separated words, with every ASCII character that is neither
/// alphanumeric nor whitespace counted as its own token. Non-ASCII bytes are
/// word characters.
class DefaultTokenizer final : public Tokenizer {
 public:
  std::size_t count(std::string_view text) const override;
  std::string_view name() const override { return "default"; }
};

/// Whitespace-separated words only.
class WhitespaceTokenizer final : public Tokenizer {
 public:
  std::size_t count(std::string_view text) const override;
  std::string_view name() const override { return "whitespace"; }
};

/// "default" or "whitespace"; throws InvalidArgument otherwise.
std::unique_ptr<Tokenizer> make_tokenizer(std::string_view name);

struct EntitySpan {
  std::size_t start = 0;  // code points, half open
  std::size_t end = 0;
  std::string smiles;
};

struct AnnotatedProcedure {
  std::string id;
  std::string text;
  std::vector<EntitySpan> entities;
};

/// {"id", "text", "entities": [{"span": [start, end], "smiles"}]}. Spans
/// count Unicode code points. Throws SchemaError when the shape is wrong,
/// the text is not UTF-8, or spans overlap / leave the text.
AnnotatedProcedure parse_procedure(const nlohmann::json& j);

struct Segment {
  enum class Kind { Text, Mol };
  Kind kind = Kind::Text;
  std::string value;  // text, or the entity's surface string
  std::string smiles;  // canonical, mol segments only
  GraphRecord graph;   // mol segments only
};

struct InterleavedRecord {
  std::string id;
  std::vector<Segment> segments;
  std::size_t entity_count = 0;
  std::size_t token_count = 0;
};

nlohmann::ordered_json to_json(const InterleavedRecord& record);

/// Concatenation of text values and entity surfaces.
std::string reconstruct_text(const InterleavedRecord& record);

enum class Rejection { None, Malformed, NoEntity, EntityLimit, TokenLimit, ParseFail };

std::string_view to_string(Rejection reason);

struct InterleaveLimits {
  std::size_t max_entities = 20;
  std::size_t max_tokens = 1024;
};

struct InterleaveResult {
  std::optional<InterleavedRecord> record;
  Rejection rejection = Rejection::None;
  std::string detail;
};

/// Checks, in order: no entities, entity limit, token limit (text tokens
/// plus one per entity), entity SMILES validity.
InterleaveResult build_interleaved(const AnnotatedProcedure& proc, const InterleaveLimits& limits,
                                   const Tokenizer& tokenizer);

/// Caption pair {"id", "smiles", "caption"} as a [mol, text] record.
InterleaveResult build_caption_record(const nlohmann::json& j, const InterleaveLimits& limits,
                                      const Tokenizer& tokenizer);

inline constexpr std::string_view kNameTasks[] = {
    "iupac_to_formula", "iupac_to_smiles", "graph_to_formula", "graph_to_iupac", "graph_to_smiles"};

struct NameEntry {
  std::string id;
  std::string smiles;
  std::optional<std::string> iupac;
  std::optional<std::string> formula;
};

/// {"id"?, "smiles", "iupac"?, "formula"?}.
NameEntry parse_name_entry(const nlohmann::json& j);

struct NameConversionRecord {
  std::string id;
  std::string task;
  std::variant<std::string, GraphRecord> input;
  std::string target;
};

nlohmann::ordered_json to_json(const NameConversionRecord& record);

/// graph_to_formula and graph_to_smiles always; the iupac tasks only with
/// a name. Throws for invalid SMILES and for a formula that disagrees with
/// the structure.
std::vector<NameConversionRecord> build_name_conversion(const NameEntry& entry);

/// Element counts of a Hill-style formula ("C2H6O"). Throws InvalidArgument.
std::map<std::string, int> parse_formula(std::string_view formula);

/// Running statistics over a procedure stream.
class CorpusStats {
 public:
  static constexpr std::size_t kTokenBinWidth = 64;

  void add(const InterleaveResult& result);
  void add_malformed();

  std::size_t total() const noexcept { return total_; }
  std::size_t kept() const noexcept { return kept_; }
  std::size_t rejected(Rejection reason) const;
  std::size_t unique_molecules() const noexcept { return molecules_.size(); }

  nlohmann::ordered_json to_json() const;

 private:
  std::size_t total_ = 0;
  std::size_t kept_ = 0;
  std::map<Rejection, std::size_t> rejected_;
  std::set<std::string> molecules_;
  std::map<std::size_t, std::size_t> token_bins_;
  std::map<std::size_t, std::size_t> entity_counts_;
};

}  // namespace rxnlab
