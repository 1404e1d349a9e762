#include <cctype>

#include "rxnlab/corpus.hpp"
#include "rxnlab/errors.hpp"

namespace rxnlab {

namespace {

bool is_space(unsigned char c) { return c == ' ' || (c >= '\t' && c <= '\r'); }

}  // namespace

std::size_t DefaultTokenizer::count(std::string_view text) const {
  std::size_t tokens = 0;
  bool in_word = false;
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_space(c)) {
      in_word = false;
    } else if (c < 0x80 && !std::isalnum(c)) {
      ++tokens;
      in_word = false;
    } else if (!in_word) {
      ++tokens;
      in_word = true;
    }
  }
  return tokens;
}

std::size_t WhitespaceTokenizer::count(std::string_view text) const {
  std::size_t tokens = 0;
  bool in_word = false;
  for (const char ch : text) {
    if (is_space(static_cast<unsigned char>(ch))) {
      in_word = false;
    } else if (!in_word) {
      ++tokens;
      in_word = true;
    }
  }
  return tokens;
}

std::unique_ptr<Tokenizer> make_tokenizer(std::string_view name) {
  if (name == "default") return std::make_unique<DefaultTokenizer>();
  if (name == "whitespace") return std::make_unique<WhitespaceTokenizer>();
  throw InvalidArgument("unknown tokenizer '" + std::string(name) + "' (expected default or whitespace)");
}

}  // namespace rxnlab
