#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rxnlab/molecule.hpp"

namespace rxnlab {

/// Boolean expression over atom or bond primitives.
struct QueryExpr {
  enum class Op { Leaf, Not, And, Or };
  enum class Prim {
    True,           // '*' or '~'
    AtomicNumber,   // #n, element symbols (value = Z)
    Aromatic,       // a / lowercase symbol
    Aliphatic,      // A / uppercase symbol
    InRing,         // R
    RingCount,      // Rn
    Degree,         // Dn
    HydrogenCount,  // Hn
    Charge,         // + - +n -n +0
    BondSingle,
    BondDouble,
    BondTriple,
    BondAromatic,
    BondRing,       // @
  };

  Op op = Op::Leaf;
  Prim prim = Prim::True;
  int value = 0;
  std::vector<QueryExpr> children;
};

struct QueryAtom {
  QueryExpr expr;
};

struct QueryBond {
  int begin;
  int end;
  QueryExpr expr;
};

/// Parsed substructure query (SMARTS subset).
///
/// Supported: bracket atoms built from '*', '#n', element symbols (upper
/// case aliphatic, lower case aromatic), 'a', 'A', 'R'/'Rn', 'Dn', 'Hn',
/// charges, combined with '!', '&', ',' and ';' (implicit '&' between
/// adjacent primitives); bare organic-subset symbols; bonds '-', '=', '#',
/// ':', '~', '@' with the same logic; branches, ring closures and '.'.
/// An unwritten bond means "single or aromatic".
class Pattern {
 public:
  static Pattern parse(std::string_view text);

  const std::string& text() const noexcept { return text_; }
  std::size_t atom_count() const noexcept { return atoms_.size(); }
  const std::vector<QueryAtom>& atoms() const noexcept { return atoms_; }
  const std::vector<QueryBond>& bonds() const noexcept { return bonds_; }

 private:
  friend class PatternParser;
  std::string text_;
  std::vector<QueryAtom> atoms_;
  std::vector<QueryBond> bonds_;
};

/// Throws SyntaxError.
inline Pattern parse_pattern(std::string_view text) { return Pattern::parse(text); }

bool atom_matches(const QueryExpr& expr, const Molecule& mol, int atom);
bool bond_matches(const QueryExpr& expr, const Molecule& mol, int bond);

bool has_match(const Pattern& pattern, const Molecule& mol);

/// Number of distinct molecule atom sets covered by an embedding. Stops
/// counting once `limit` is reached.
std::size_t count_matches(const Pattern& pattern, const Molecule& mol,
                          std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Every embedding as a vector mapping pattern atom -> molecule atom.
std::vector<std::vector<int>> find_embeddings(const Pattern& pattern, const Molecule& mol);

struct KeyEntry {
  int index = 0;
  std::string smarts;
  int min_count = 1;
  Pattern pattern;
};

/// Ordered structural-key table: `index<TAB>pattern<TAB>min_count` lines,
/// '#' starts a comment line.
class KeyTable {
 public:
  /// Throws SchemaError (with line number), bad patterns included.
  static KeyTable parse(std::string_view text);
  static KeyTable load(const std::string& path);
  /// The shipped 166-key table (same content as data/maccs_keys.tsv).
  static const KeyTable& builtin();
  static std::string_view builtin_text();

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<KeyEntry>& entries() const noexcept { return entries_; }

 private:
  std::vector<KeyEntry> entries_;
};

}  // namespace rxnlab
