#include <algorithm>

#include "rxnlab/corpus.hpp"
#include "rxnlab/errors.hpp"
#include "rxnlab/reaction.hpp"
#include "rxnlab/smiles.hpp"

namespace rxnlab {

namespace {

// Byte offset of every code point start, plus the total size at the end.
std::vector<std::size_t> code_point_offsets(std::string_view s) {
  std::vector<std::size_t> out;
  std::size_t i = 0;
  while (i < s.size()) {
    out.push_back(i);
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    if (c < 0x80) {
      len = 1;
    } else if ((c & 0xE0) == 0xC0 && c >= 0xC2) {
      len = 2;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
    } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
      len = 4;
    } else {
      throw SchemaError("text is not valid UTF-8 (byte " + std::to_string(i) + ")");
    }
    if (i + len > s.size()) throw SchemaError("text ends inside a UTF-8 sequence");
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) {
        throw SchemaError("text is not valid UTF-8 (byte " + std::to_string(i + k) + ")");
      }
    }
    i += len;
  }
  out.push_back(s.size());
  return out;
}

}  // namespace

std::string_view to_string(Rejection reason) {
  switch (reason) {
    case Rejection::None: return "NONE";
    case Rejection::Malformed: return "MALFORMED";
    case Rejection::NoEntity: return "NO_ENTITY";
    case Rejection::EntityLimit: return "ENTITY_LIMIT";
    case Rejection::TokenLimit: return "TOKEN_LIMIT";
    case Rejection::ParseFail: return "PARSE_FAIL";
  }
  return "UNKNOWN";
}

AnnotatedProcedure parse_procedure(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("procedure record must be a JSON object");
  AnnotatedProcedure p;
  p.id = record_id(j);
  if (!j.contains("text") || !j["text"].is_string()) throw SchemaError("record needs a string \"text\"");
  p.text = j["text"].get<std::string>();
  const std::size_t length = code_point_offsets(p.text).size() - 1;
  if (j.contains("entities")) {
    if (!j["entities"].is_array()) throw SchemaError("\"entities\" must be an array");
    for (const auto& e : j["entities"]) {
      if (!e.is_object() || !e.contains("span") || !e.contains("smiles") || !e["smiles"].is_string()) {
        throw SchemaError("entity needs \"span\" and a string \"smiles\"");
      }
      const auto& span = e["span"];
      if (!span.is_array() || span.size() != 2 || !span[0].is_number_unsigned() ||
          !span[1].is_number_unsigned()) {
        throw SchemaError("entity span must be [start, end] with non-negative integers");
      }
      EntitySpan s;
      s.start = span[0].get<std::size_t>();
      s.end = span[1].get<std::size_t>();
      s.smiles = e["smiles"].get<std::string>();
      if (s.start >= s.end || s.end > length) {
        throw SchemaError("entity span [" + std::to_string(s.start) + ", " + std::to_string(s.end) +
                          ") outside text of length " + std::to_string(length));
      }
      if (!p.entities.empty() && s.start < p.entities.back().end) {
        throw SchemaError("entity spans must be ascending and non-overlapping");
      }
      p.entities.push_back(std::move(s));
    }
  }
  return p;
}

InterleaveResult build_interleaved(const AnnotatedProcedure& proc, const InterleaveLimits& limits,
                                   const Tokenizer& tokenizer) {
  InterleaveResult result;
  const auto offsets = code_point_offsets(proc.text);
  const std::size_t length = offsets.size() - 1;
  std::size_t cursor = 0;
  for (const EntitySpan& e : proc.entities) {
    if (e.start < cursor || e.start >= e.end || e.end > length) {
      throw SchemaError("entity spans must be ascending, non-overlapping and inside the text");
    }
    cursor = e.end;
  }
  if (proc.entities.empty()) {
    result.rejection = Rejection::NoEntity;
    result.detail = "no molecule entities";
    return result;
  }
  if (proc.entities.size() > limits.max_entities) {
    result.rejection = Rejection::EntityLimit;
    result.detail = std::to_string(proc.entities.size()) + " entities > " +
                    std::to_string(limits.max_entities);
    return result;
  }

  InterleavedRecord rec;
  rec.id = proc.id;
  rec.entity_count = proc.entities.size();
  std::size_t tokens = 0;
  std::size_t at = 0;  // code points
  auto bytes = [&](std::size_t from, std::size_t to) {
    return proc.text.substr(offsets[from], offsets[to] - offsets[from]);
  };
  for (const EntitySpan& e : proc.entities) {
    if (e.start > at) {
      Segment t;
      t.value = bytes(at, e.start);
      tokens += tokenizer.count(t.value);
      rec.segments.push_back(std::move(t));
    }
    Segment m;
    m.kind = Segment::Kind::Mol;
    m.value = bytes(e.start, e.end);
    m.smiles = e.smiles;  // canonicalized below, after the limit checks
    ++tokens;
    rec.segments.push_back(std::move(m));
    at = e.end;
  }
  if (at < length) {
    Segment t;
    t.value = bytes(at, length);
    tokens += tokenizer.count(t.value);
    rec.segments.push_back(std::move(t));
  }
  rec.token_count = tokens;
  if (tokens > limits.max_tokens) {
    result.rejection = Rejection::TokenLimit;
    result.detail = std::to_string(tokens) + " tokens > " + std::to_string(limits.max_tokens);
    return result;
  }
  std::size_t entity = 0;
  for (Segment& s : rec.segments) {
    if (s.kind != Segment::Kind::Mol) continue;
    try {
      const Molecule mol = parse_smiles(s.smiles);
      s.smiles = canonical_smiles(mol);
      s.graph = to_graph_record(mol);
    } catch (const Error& err) {
      result.rejection = Rejection::ParseFail;
      result.detail = "entity " + std::to_string(entity) + " ('" + s.smiles + "'): " + err.what();
      return result;
    }
    ++entity;
  }
  result.record = std::move(rec);
  return result;
}

InterleaveResult build_caption_record(const nlohmann::json& j, const InterleaveLimits& limits,
                                      const Tokenizer& tokenizer) {
  if (!j.is_object()) throw SchemaError("caption record must be a JSON object");
  const std::string id = record_id(j);
  if (!j.contains("smiles") || !j["smiles"].is_string() || !j.contains("caption") ||
      !j["caption"].is_string()) {
    throw SchemaError("caption record needs string \"smiles\" and \"caption\"");
  }
  InterleaveResult result;
  InterleavedRecord rec;
  rec.id = id;
  rec.entity_count = 1;
  Segment m;
  m.kind = Segment::Kind::Mol;
  m.value = j["smiles"].get<std::string>();
  Segment t;
  t.value = j["caption"].get<std::string>();
  code_point_offsets(t.value);
  rec.token_count = 1 + tokenizer.count(t.value);
  if (rec.token_count > limits.max_tokens) {
    result.rejection = Rejection::TokenLimit;
    result.detail = std::to_string(rec.token_count) + " tokens > " + std::to_string(limits.max_tokens);
    return result;
  }
  try {
    const Molecule mol = parse_smiles(m.value);
    m.smiles = canonical_smiles(mol);
    m.graph = to_graph_record(mol);
  } catch (const Error& err) {
    result.rejection = Rejection::ParseFail;
    result.detail = err.what();
    return result;
  }
  rec.segments.push_back(std::move(m));
  rec.segments.push_back(std::move(t));
  result.record = std::move(rec);
  return result;
}

nlohmann::ordered_json to_json(const InterleavedRecord& record) {
  nlohmann::ordered_json segments = nlohmann::ordered_json::array();
  for (const Segment& s : record.segments) {
    nlohmann::ordered_json j;
    if (s.kind == Segment::Kind::Text) {
      j["kind"] = "text";
      j["value"] = s.value;
    } else {
      j["kind"] = "mol";
      j["surface"] = s.value;
      j["smiles"] = s.smiles;
      nlohmann::ordered_json g;
      to_json(g, s.graph);
      j["graph"] = std::move(g);
    }
    segments.push_back(std::move(j));
  }
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["segments"] = std::move(segments);
  j["stats"] = {{"entity_count", record.entity_count}, {"token_count", record.token_count}};
  return j;
}

std::string reconstruct_text(const InterleavedRecord& record) {
  std::string out;
  for (const Segment& s : record.segments) out += s.value;
  return out;
}

void CorpusStats::add(const InterleaveResult& result) {
  ++total_;
  if (!result.record) {
    ++rejected_[result.rejection];
    return;
  }
  ++kept_;
  const InterleavedRecord& rec = *result.record;
  ++token_bins_[rec.token_count / kTokenBinWidth];
  ++entity_counts_[rec.entity_count];
  for (const Segment& s : rec.segments) {
    if (s.kind == Segment::Kind::Mol) molecules_.insert(s.smiles);
  }
}

void CorpusStats::add_malformed() {
  ++total_;
  ++rejected_[Rejection::Malformed];
}

std::size_t CorpusStats::rejected(Rejection reason) const {
  const auto it = rejected_.find(reason);
  return it == rejected_.end() ? 0 : it->second;
}

nlohmann::ordered_json CorpusStats::to_json() const {
  nlohmann::ordered_json rejected = nlohmann::ordered_json::object();
  for (Rejection r : {Rejection::Malformed, Rejection::NoEntity, Rejection::EntityLimit,
                      Rejection::TokenLimit, Rejection::ParseFail}) {
    rejected[std::string(rxnlab::to_string(r))] = this->rejected(r);
  }
  nlohmann::ordered_json tokens = nlohmann::ordered_json::array();
  for (const auto& [bin, n] : token_bins_) {
    tokens.push_back({{"min", bin * kTokenBinWidth}, {"max", bin * kTokenBinWidth + kTokenBinWidth - 1},
                      {"count", n}});
  }
  nlohmann::ordered_json entities = nlohmann::ordered_json::array();
  for (const auto& [k, n] : entity_counts_) entities.push_back({{"molecules", k}, {"count", n}});
  nlohmann::ordered_json j;
  j["total"] = total_;
  j["kept"] = kept_;
  j["rejected"] = std::move(rejected);
  j["unique_molecule_count"] = molecules_.size();
  j["token_length_histogram"] = std::move(tokens);
  j["molecules_per_sample_histogram"] = std::move(entities);
  return j;
}

}  // namespace rxnlab
