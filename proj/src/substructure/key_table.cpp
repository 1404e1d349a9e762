#include <charconv>
#include <fstream>
#include <sstream>

#include "rxnlab/errors.hpp"
#include "rxnlab/substructure.hpp"

namespace rxnlab {

namespace detail {
extern const char* const kBuiltinKeyTable;  // generated from data/maccs_keys.tsv
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::size_t line, const char* what) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw SchemaError(std::string("key table: bad ") + what + " '" + std::string(s) + "'", line);
  }
  return v;
}

}  // namespace

KeyTable KeyTable::parse(std::string_view text) {
  KeyTable table;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos || line.find('\t', t2 + 1) != std::string_view::npos) {
      throw SchemaError("key table: expected index<TAB>pattern<TAB>min_count", line_no);
    }
    KeyEntry e;
    e.index = parse_int(trim(line.substr(0, t1)), line_no, "index");
    e.smarts = std::string(trim(line.substr(t1 + 1, t2 - t1 - 1)));
    e.min_count = parse_int(trim(line.substr(t2 + 1)), line_no, "min_count");
    if (e.min_count < 1) throw SchemaError("key table: min_count must be >= 1", line_no);
    if (!table.entries_.empty() && e.index <= table.entries_.back().index) {
      throw SchemaError("key table: indices must increase", line_no);
    }
    try {
      e.pattern = Pattern::parse(e.smarts);
    } catch (const SyntaxError& err) {
      throw SchemaError(std::string("key table: ") + err.what(), line_no);
    }
    table.entries_.push_back(std::move(e));
  }
  if (table.entries_.empty()) throw SchemaError("key table has no entries");
  return table;
}

KeyTable KeyTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open key table " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string_view KeyTable::builtin_text() { return detail::kBuiltinKeyTable; }

const KeyTable& KeyTable::builtin() {
  static const KeyTable table = parse(builtin_text());
  return table;
}

}  // namespace rxnlab
