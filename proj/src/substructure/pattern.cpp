#include <cctype>
#include <map>
#include <optional>

#include "rxnlab/elements.hpp"
#include "rxnlab/errors.hpp"
#include "rxnlab/substructure.hpp"

namespace rxnlab {

namespace {

using Op = QueryExpr::Op;
using Prim = QueryExpr::Prim;

QueryExpr leaf(Prim p, int value = 0) {
  QueryExpr e;
  e.prim = p;
  e.value = value;
  return e;
}

QueryExpr combine(Op op, std::vector<QueryExpr> parts) {
  if (parts.size() == 1) return std::move(parts.front());
  QueryExpr e;
  e.op = op;
  e.children = std::move(parts);
  return e;
}

QueryExpr negate(QueryExpr inner) {
  QueryExpr e;
  e.op = Op::Not;
  e.children.push_back(std::move(inner));
  return e;
}

QueryExpr element(int z, std::optional<bool> aromatic) {
  if (!aromatic) return leaf(Prim::AtomicNumber, z);
  return combine(Op::And, {leaf(Prim::AtomicNumber, z),
                           leaf(*aromatic ? Prim::Aromatic : Prim::Aliphatic)});
}

QueryExpr default_bond() {
  return combine(Op::Or, {leaf(Prim::BondSingle), leaf(Prim::BondAromatic)});
}

bool is_bond_char(char c) {
  return c == '-' || c == '=' || c == '#' || c == ':' || c == '~' || c == '@' || c == '!' ||
         c == '&' || c == ',' || c == ';';
}

}  // namespace

class PatternParser {
 public:
  explicit PatternParser(std::string_view text) : s_(text) {}

  Pattern run() {
    if (s_.empty()) throw SyntaxError("empty pattern", 0);
    Pattern p;
    p.text_ = std::string(s_);
    std::vector<int> branch_stack;
    int prev = -1;
    std::optional<QueryExpr> pending;

    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '(') {
        if (prev < 0 || pending) throw SyntaxError("misplaced '('", pos_);
        branch_stack.push_back(prev);
        ++pos_;
      } else if (c == ')') {
        if (branch_stack.empty() || pending) throw SyntaxError("unbalanced ')'", pos_);
        prev = branch_stack.back();
        branch_stack.pop_back();
        ++pos_;
      } else if (c == '.') {
        if (prev < 0 || pending || !branch_stack.empty()) throw SyntaxError("misplaced '.'", pos_);
        prev = -1;
        ++pos_;
      } else if (is_bond_char(c) && !(c == '#' && prev < 0)) {
        if (prev < 0 || pending) throw SyntaxError("misplaced bond expression", pos_);
        pending = parse_bond_expr();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        if (prev < 0) throw SyntaxError("ring closure without an atom", pos_);
        const std::size_t at = pos_;
        int number = 0;
        if (c == '%') {
          if (pos_ + 2 >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) ||
              !std::isdigit(static_cast<unsigned char>(s_[pos_ + 2]))) {
            throw SyntaxError("'%' must be followed by two digits", pos_);
          }
          number = (s_[pos_ + 1] - '0') * 10 + (s_[pos_ + 2] - '0');
          pos_ += 3;
        } else {
          number = c - '0';
          ++pos_;
        }
        auto it = open_.find(number);
        if (it == open_.end()) {
          open_.emplace(number, std::pair{prev, std::move(pending)});
        } else {
          auto [other, bond] = std::move(it->second);
          open_.erase(it);
          if (other == prev) throw SyntaxError("ring closure on the same atom", at);
          QueryExpr e = pending ? std::move(*pending) : bond ? std::move(*bond) : default_bond();
          p.bonds_.push_back({other, prev, std::move(e)});
        }
        pending.reset();
      } else {
        QueryAtom atom{parse_atom()};
        p.atoms_.push_back(std::move(atom));
        const int idx = static_cast<int>(p.atoms_.size()) - 1;
        if (prev >= 0) {
          p.bonds_.push_back({prev, idx, pending ? std::move(*pending) : default_bond()});
        }
        pending.reset();
        prev = idx;
      }
    }
    if (pending) throw SyntaxError("dangling bond expression", s_.size());
    if (!branch_stack.empty()) throw SyntaxError("unbalanced '('", s_.size());
    if (!open_.empty()) throw SyntaxError("unclosed ring closure", s_.size());
    if (p.atoms_.empty()) throw SyntaxError("pattern has no atoms", 0);
    return p;
  }

 private:
  bool at(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

  bool digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }

  int number() {
    int v = 0;
    while (digit()) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 1000) throw SyntaxError("number too large in pattern", pos_);
    }
    return v;
  }

  // bond expression: low-and ';' < or ',' < high-and '&'/juxtaposition < '!'
  QueryExpr parse_bond_expr() {
    return parse_logic([this] { return bond_primitive(); }, is_bond_prim_start);
  }

  static bool is_bond_prim_start(char c) {
    return c == '-' || c == '=' || c == '#' || c == ':' || c == '~' || c == '@' || c == '!';
  }

  QueryExpr bond_primitive() {
    if (pos_ >= s_.size()) throw SyntaxError("expected bond primitive", pos_);
    switch (s_[pos_++]) {
      case '-': return leaf(Prim::BondSingle);
      case '=': return leaf(Prim::BondDouble);
      case '#': return leaf(Prim::BondTriple);
      case ':': return leaf(Prim::BondAromatic);
      case '~': return leaf(Prim::True);
      case '@': return leaf(Prim::BondRing);
      default: break;
    }
    --pos_;
    throw SyntaxError(std::string("unsupported bond primitive '") + s_[pos_] + "'", pos_);
  }

  template <typename Primitive, typename StartPred>
  QueryExpr parse_logic(Primitive primitive, StartPred starts) {
    auto unary = [&]() -> QueryExpr {
      int negations = 0;
      while (at('!')) {
        ++pos_;
        ++negations;
      }
      QueryExpr e = primitive();
      if (negations % 2) e = negate(std::move(e));
      return e;
    };
    auto high_and = [&]() {
      std::vector<QueryExpr> parts{unary()};
      for (;;) {
        if (at('&')) {
          ++pos_;
          parts.push_back(unary());
        } else if (pos_ < s_.size() && starts(s_[pos_])) {
          parts.push_back(unary());
        } else {
          break;
        }
      }
      return combine(Op::And, std::move(parts));
    };
    auto disjunction = [&]() {
      std::vector<QueryExpr> parts{high_and()};
      while (at(',')) {
        ++pos_;
        parts.push_back(high_and());
      }
      return combine(Op::Or, std::move(parts));
    };
    std::vector<QueryExpr> parts{disjunction()};
    while (at(';')) {
      ++pos_;
      parts.push_back(disjunction());
    }
    return combine(Op::And, std::move(parts));
  }

  QueryExpr parse_atom() {
    const char c = s_[pos_];
    if (c == '[') {
      const std::size_t open = pos_++;
      QueryExpr e = parse_logic([this] { return atom_primitive(); },
                                [](char ch) { return ch != ']' && ch != ',' && ch != ';' && ch != '&'; });
      if (!at(']')) throw SyntaxError("malformed bracket expression", open);
      ++pos_;
      return e;
    }
    if (c == '*') {
      ++pos_;
      return leaf(Prim::True);
    }
    if (c == 'a' || c == 'A') {
      ++pos_;
      return leaf(c == 'a' ? Prim::Aromatic : Prim::Aliphatic);
    }
    static const std::pair<std::string_view, int> kBare[] = {
        {"Cl", 17}, {"Br", 35}, {"B", 5},  {"C", 6},  {"N", 7},  {"O", 8}, {"P", 15},
        {"S", 16},  {"F", 9},   {"I", 53}, {"b", 5},  {"c", 6},  {"n", 7}, {"o", 8},
        {"p", 15},  {"s", 16}};
    for (const auto& [sym, z] : kBare) {
      if (s_.substr(pos_, sym.size()) == sym) {
        pos_ += sym.size();
        const bool aromatic = std::islower(static_cast<unsigned char>(sym[0]));
        // halogens have no aromatic form; the symbol alone is enough
        if (z == 9 || z == 17 || z == 35 || z == 53) return leaf(Prim::AtomicNumber, z);
        return element(z, aromatic);
      }
    }
    throw SyntaxError(std::string("unsupported token '") + c + "' in pattern", pos_);
  }

  QueryExpr atom_primitive() {
    if (pos_ >= s_.size()) throw SyntaxError("unterminated bracket expression", pos_);
    const std::size_t start = pos_;
    const char c = s_[pos_];
    if (c == '*') {
      ++pos_;
      return leaf(Prim::True);
    }
    if (c == '#') {
      ++pos_;
      if (!digit()) throw SyntaxError("'#' needs an atomic number", pos_);
      const int z = number();
      if (z < 1 || z > elements::kMaxAtomicNumber) throw SyntaxError("atomic number out of range", start);
      return leaf(Prim::AtomicNumber, z);
    }
    if (c == '+' || c == '-') {
      ++pos_;
      int magnitude = 1;
      if (digit()) {
        magnitude = number();
      } else {
        while (at(c)) {
          ++pos_;
          ++magnitude;
        }
      }
      return leaf(Prim::Charge, c == '+' ? magnitude : -magnitude);
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      if (pos_ + 1 < s_.size() && std::islower(static_cast<unsigned char>(s_[pos_ + 1]))) {
        if (auto z = elements::atomic_number(s_.substr(pos_, 2))) {
          pos_ += 2;
          return element(*z, false);
        }
      }
      ++pos_;
      switch (c) {
        case 'A': return leaf(Prim::Aliphatic);
        case 'R':
          if (digit()) return leaf(Prim::RingCount, number());
          return leaf(Prim::InRing);
        case 'D': return leaf(Prim::Degree, digit() ? number() : 1);
        case 'H': return leaf(Prim::HydrogenCount, digit() ? number() : 1);
        default: break;
      }
      if (auto z = elements::atomic_number(s_.substr(start, 1))) return element(*z, false);
      throw SyntaxError(std::string("unknown atom primitive '") + c + "'", start);
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      static const std::pair<std::string_view, int> kAromatic[] = {
          {"se", 34}, {"as", 33}, {"te", 52}, {"b", 5}, {"c", 6},
          {"n", 7},   {"o", 8},   {"p", 15},  {"s", 16}};
      for (const auto& [sym, z] : kAromatic) {
        if (s_.substr(pos_, sym.size()) == sym) {
          pos_ += sym.size();
          return element(z, true);
        }
      }
      if (c == 'a') {
        ++pos_;
        return leaf(Prim::Aromatic);
      }
    }
    throw SyntaxError(std::string("unsupported atom primitive '") + c + "'", start);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::map<int, std::pair<int, std::optional<QueryExpr>>> open_;
};

Pattern Pattern::parse(std::string_view text) { return PatternParser(text).run(); }

}  // namespace rxnlab
