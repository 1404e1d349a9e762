#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "graph_algos.hpp"
#include "rxnlab/elements.hpp"
#include "rxnlab/errors.hpp"
#include "rxnlab/smiles.hpp"

namespace rxnlab {
namespace {

struct RawAtom {
  Atom atom;
  bool bracket = false;
  std::size_t position = 0;
};

struct RawBond {
  int begin;
  int end;
  std::optional<BondOrder> order;  // nullopt: implicit
  BondStereo stereo = BondStereo::None;
};

struct PendingBond {
  std::optional<BondOrder> order;
  BondStereo stereo = BondStereo::None;
  bool present = false;
  std::size_t position = 0;
};

struct RingOpening {
  int atom;
  PendingBond bond;
  std::size_t position;
};

class SmilesParser {
 public:
  explicit SmilesParser(std::string_view text) : s_(text) {}

  void run() {
    if (s_.empty()) throw SyntaxError("empty SMILES", 0);
    std::vector<int> branch_stack;
    int prev = -1;
    bool after_dot = false;
    PendingBond pending;

    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '(') {
        if (prev < 0) throw SyntaxError("branch without a preceding atom", pos_);
        if (pending.present) throw SyntaxError("bond symbol before '('", pos_);
        branch_stack.push_back(prev);
        ++pos_;
        if (pos_ < s_.size() && s_[pos_] == ')') throw SyntaxError("empty branch", pos_);
      } else if (c == ')') {
        if (branch_stack.empty()) throw SyntaxError("unbalanced ')'", pos_);
        if (pending.present) throw SyntaxError("bond symbol before ')'", pos_);
        prev = branch_stack.back();
        branch_stack.pop_back();
        ++pos_;
      } else if (c == '.') {
        if (pending.present) throw SyntaxError("bond symbol before '.'", pos_);
        if (prev < 0) throw SyntaxError("'.' without a preceding atom", pos_);
        if (!branch_stack.empty()) throw SyntaxError("'.' inside a branch", pos_);
        prev = -1;
        after_dot = true;
        ++pos_;
      } else if (auto order = bond_symbol(c)) {
        if (pending.present) throw SyntaxError("two consecutive bond symbols", pos_);
        if (prev < 0) throw SyntaxError("bond symbol without a preceding atom", pos_);
        pending = *order;
        pending.position = pos_;
        ++pos_;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        if (prev < 0) throw SyntaxError("ring-bond digit without a preceding atom", pos_);
        const std::size_t at = pos_;
        ring_bond(prev, read_ring_number(), pending, at);
        pending = PendingBond{};
      } else {
        const int atom = read_atom();
        if (prev >= 0) {
          bonds_.push_back({prev, atom, pending.order, pending.stereo});
        } else if (pending.present) {
          throw SyntaxError("bond symbol at start of a component", pending.position);
        }
        pending = PendingBond{};
        prev = atom;
        after_dot = false;
      }
    }
    if (pending.present) throw SyntaxError("dangling bond symbol at end", pending.position);
    if (!branch_stack.empty()) throw SyntaxError("unbalanced '(' (missing ')')", s_.size());
    if (after_dot) throw SyntaxError("SMILES ends with '.'", s_.size());
    if (!open_rings_.empty()) {
      const auto& [num, open] = *open_rings_.begin();
      throw SyntaxError("ring bond " + std::to_string(num) + " never closed", open.position);
    }
  }

  std::vector<RawAtom> atoms_;
  std::vector<RawBond> bonds_;

 private:
  static std::optional<PendingBond> bond_symbol(char c) {
    PendingBond b;
    b.present = true;
    switch (c) {
      case '-': b.order = BondOrder::Single; return b;
      case '=': b.order = BondOrder::Double; return b;
      case '#': b.order = BondOrder::Triple; return b;
      case ':': b.order = BondOrder::Aromatic; return b;
      case '/': b.order = BondOrder::Single; b.stereo = BondStereo::Up; return b;
      case '\\': b.order = BondOrder::Single; b.stereo = BondStereo::Down; return b;
      default: return std::nullopt;
    }
  }

  int read_ring_number() {
    if (s_[pos_] == '%') {
      if (pos_ + 2 >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) ||
          !std::isdigit(static_cast<unsigned char>(s_[pos_ + 2]))) {
        throw SyntaxError("'%' must be followed by two digits", pos_);
      }
      const int n = (s_[pos_ + 1] - '0') * 10 + (s_[pos_ + 2] - '0');
      pos_ += 3;
      return n;
    }
    return s_[pos_++] - '0';
  }

  void ring_bond(int atom, int number, const PendingBond& bond, std::size_t at) {
    auto it = open_rings_.find(number);
    if (it == open_rings_.end()) {
      open_rings_.emplace(number, RingOpening{atom, bond, at});
      return;
    }
    const RingOpening open = it->second;
    open_rings_.erase(it);
    if (open.atom == atom) throw SyntaxError("ring bond closes on its own atom", at);
    std::optional<BondOrder> order = open.bond.order;
    BondStereo stereo = open.bond.stereo;
    if (bond.order) {
      if (order && *order != *bond.order) {
        throw SyntaxError("conflicting bond orders on ring bond " + std::to_string(number), at);
      }
      order = bond.order;
      // closing-side mark is written relative to closing -> opening
      if (bond.stereo != BondStereo::None) {
        stereo = bond.stereo == BondStereo::Up ? BondStereo::Down : BondStereo::Up;
      }
    }
    bonds_.push_back({open.atom, atom, order, stereo});
  }

  int add_atom(RawAtom a) {
    a.position = atom_start_;
    atoms_.push_back(a);
    return static_cast<int>(atoms_.size()) - 1;
  }

  int read_atom() {
    atom_start_ = pos_;
    const char c = s_[pos_];
    if (c == '[') return read_bracket_atom();
    RawAtom a;
    if (c == 'C' && pos_ + 1 < s_.size() && s_[pos_ + 1] == 'l') {
      a.atom.atomic_number = 17;
      pos_ += 2;
    } else if (c == 'B' && pos_ + 1 < s_.size() && s_[pos_ + 1] == 'r') {
      a.atom.atomic_number = 35;
      pos_ += 2;
    } else {
      switch (c) {
        case 'B': a.atom.atomic_number = 5; break;
        case 'C': a.atom.atomic_number = 6; break;
        case 'N': a.atom.atomic_number = 7; break;
        case 'O': a.atom.atomic_number = 8; break;
        case 'P': a.atom.atomic_number = 15; break;
        case 'S': a.atom.atomic_number = 16; break;
        case 'F': a.atom.atomic_number = 9; break;
        case 'I': a.atom.atomic_number = 53; break;
        case 'b': a.atom.atomic_number = 5; a.atom.is_aromatic = true; break;
        case 'c': a.atom.atomic_number = 6; a.atom.is_aromatic = true; break;
        case 'n': a.atom.atomic_number = 7; a.atom.is_aromatic = true; break;
        case 'o': a.atom.atomic_number = 8; a.atom.is_aromatic = true; break;
        case 'p': a.atom.atomic_number = 15; a.atom.is_aromatic = true; break;
        case 's': a.atom.atomic_number = 16; a.atom.is_aromatic = true; break;
        default:
          if (std::isalpha(static_cast<unsigned char>(c)) || c == '*') {
            throw SyntaxError(std::string("unknown element symbol '") + c +
                                  "' (use brackets for elements outside the organic subset)",
                              pos_);
          }
          throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
      }
      ++pos_;
    }
    return add_atom(a);
  }

  int read_number() {
    int v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 100000) throw SyntaxError("number too large", pos_);
    }
    return v;
  }

  bool digit_here() const {
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  int read_bracket_atom() {
    RawAtom a;
    a.bracket = true;
    ++pos_;  // '['
    if (digit_here()) {
      const int iso = read_number();
      if (iso <= 0) throw SyntaxError("isotope must be positive", pos_);
      a.atom.isotope = iso;
    }
    if (pos_ >= s_.size()) throw SyntaxError("unterminated bracket atom", atom_start_);
    // element symbol
    const char c = s_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      static const std::pair<std::string_view, int> kAromatic[] = {
          {"se", 34}, {"as", 33}, {"te", 52}, {"b", 5}, {"c", 6},
          {"n", 7},   {"o", 8},   {"p", 15},  {"s", 16}};
      bool found = false;
      for (const auto& [sym, z] : kAromatic) {
        if (s_.substr(pos_, sym.size()) == sym) {
          a.atom.atomic_number = z;
          a.atom.is_aromatic = true;
          pos_ += sym.size();
          found = true;
          break;
        }
      }
      if (!found) throw SyntaxError(std::string("unknown aromatic symbol '") + c + "'", pos_);
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      std::optional<int> z;
      if (pos_ + 1 < s_.size() && std::islower(static_cast<unsigned char>(s_[pos_ + 1]))) {
        z = elements::atomic_number(s_.substr(pos_, 2));
        if (z) pos_ += 2;
      }
      if (!z) {
        z = elements::atomic_number(s_.substr(pos_, 1));
        if (!z) throw SyntaxError(std::string("unknown element symbol '") + c + "'", pos_);
        ++pos_;
      }
      a.atom.atomic_number = *z;
    } else {
      throw SyntaxError("expected element symbol in bracket atom", pos_);
    }
    // chirality
    if (pos_ < s_.size() && s_[pos_] == '@') {
      ++pos_;
      a.atom.chirality = Chirality::CounterClockwise;
      if (pos_ < s_.size() && s_[pos_] == '@') {
        ++pos_;
        a.atom.chirality = Chirality::Clockwise;
      }
    }
    // hydrogens
    if (pos_ < s_.size() && s_[pos_] == 'H') {
      ++pos_;
      a.atom.implicit_hydrogens = digit_here() ? read_number() : 1;
    }
    // charge
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      const char sign = s_[pos_++];
      int magnitude = 1;
      if (digit_here()) {
        magnitude = read_number();
      } else {
        while (pos_ < s_.size() && s_[pos_] == sign) {
          ++magnitude;
          ++pos_;
        }
      }
      if (magnitude > 15) throw SyntaxError("formal charge out of range", pos_);
      a.atom.formal_charge = sign == '+' ? magnitude : -magnitude;
    }
    // atom class (ignored)
    if (pos_ < s_.size() && s_[pos_] == ':') {
      ++pos_;
      if (!digit_here()) throw SyntaxError("atom class must be numeric", pos_);
      read_number();
    }
    if (pos_ >= s_.size() || s_[pos_] != ']') {
      throw SyntaxError("malformed bracket atom (expected ']')", pos_);
    }
    ++pos_;
    return add_atom(a);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t atom_start_ = 0;
  std::map<int, RingOpening> open_rings_;
};

// Removes neutral, unlabelled hydrogens bonded to exactly one non-hydrogen
// atom and credits them to that atom.
void fold_explicit_hydrogens(std::vector<RawAtom>& atoms, std::vector<RawBond>& bonds,
                             std::vector<int>& extra_h) {
  const std::size_t n = atoms.size();
  std::vector<int> degree(n, 0);
  std::vector<int> partner(n, -1);
  for (const RawBond& b : bonds) {
    ++degree[static_cast<std::size_t>(b.begin)];
    ++degree[static_cast<std::size_t>(b.end)];
    partner[static_cast<std::size_t>(b.begin)] = b.end;
    partner[static_cast<std::size_t>(b.end)] = b.begin;
  }
  std::vector<bool> drop(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& a = atoms[i].atom;
    if (a.atomic_number != 1 || a.formal_charge != 0 || a.isotope || a.implicit_hydrogens != 0 ||
        degree[i] != 1) {
      continue;
    }
    const int p = partner[i];
    if (atoms[static_cast<std::size_t>(p)].atom.atomic_number == 1) continue;
    drop[i] = true;
  }
  extra_h.assign(n, 0);
  std::vector<RawBond> kept;
  for (const RawBond& b : bonds) {
    if (drop[static_cast<std::size_t>(b.begin)]) {
      ++extra_h[static_cast<std::size_t>(b.end)];
    } else if (drop[static_cast<std::size_t>(b.end)]) {
      ++extra_h[static_cast<std::size_t>(b.begin)];
    } else {
      kept.push_back(b);
    }
  }
  std::vector<int> index(n, -1);
  std::vector<RawAtom> out;
  std::vector<int> out_h;
  for (std::size_t i = 0; i < n; ++i) {
    if (drop[i]) continue;
    index[i] = static_cast<int>(out.size());
    out.push_back(atoms[i]);
    out_h.push_back(extra_h[i]);
  }
  for (RawBond& b : kept) {
    b.begin = index[static_cast<std::size_t>(b.begin)];
    b.end = index[static_cast<std::size_t>(b.end)];
  }
  atoms = std::move(out);
  bonds = std::move(kept);
  extra_h = std::move(out_h);
}

}  // namespace

Molecule parse_smiles(std::string_view text) {
  SmilesParser parser(text);
  parser.run();
  std::vector<RawAtom>& raw_atoms = parser.atoms_;
  std::vector<RawBond>& raw_bonds = parser.bonds_;
  std::vector<int> extra_h;
  fold_explicit_hydrogens(raw_atoms, raw_bonds, extra_h);

  const int n = static_cast<int>(raw_atoms.size());
  std::vector<Atom> atoms;
  atoms.reserve(raw_atoms.size());
  for (const RawAtom& r : raw_atoms) atoms.push_back(r.atom);

  std::vector<Bond> bonds;
  bonds.reserve(raw_bonds.size());
  std::vector<bool> implicit;
  for (const RawBond& r : raw_bonds) {
    Bond b;
    b.begin = r.begin;
    b.end = r.end;
    b.stereo = r.stereo;
    if (r.order) {
      b.order = *r.order;
    } else {
      const bool both_aromatic = atoms[static_cast<std::size_t>(r.begin)].is_aromatic &&
                                 atoms[static_cast<std::size_t>(r.end)].is_aromatic;
      b.order = both_aromatic ? BondOrder::Aromatic : BondOrder::Single;
    }
    bonds.push_back(b);
  }
  // graph simplicity first, so later stages can assume it
  {
    std::map<std::pair<int, int>, int> seen;
    for (const Bond& b : bonds) {
      const auto key = std::minmax(b.begin, b.end);
      if (!seen.emplace(key, 1).second) {
        throw SyntaxError("duplicate bond between atoms " + std::to_string(key.first) + " and " +
                              std::to_string(key.second),
                          raw_atoms[static_cast<std::size_t>(key.second)].position);
      }
    }
  }

  auto adj = detail::build_adjacency(n, bonds);
  const auto ring_bond = detail::find_ring_bonds(adj, static_cast<int>(bonds.size()));
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    if (bonds[b].order == BondOrder::Aromatic && !ring_bond[b]) bonds[b].order = BondOrder::Single;
  }
  for (int i = 0; i < n; ++i) {
    RawAtom& r = raw_atoms[static_cast<std::size_t>(i)];
    Atom& a = atoms[static_cast<std::size_t>(i)];
    if (r.bracket) {
      a.implicit_hydrogens += extra_h[static_cast<std::size_t>(i)];
      continue;
    }
    int sum = 0;
    int aromatic = 0;
    for (const Neighbor& nb : adj[static_cast<std::size_t>(i)]) {
      const BondOrder o = bonds[static_cast<std::size_t>(nb.bond)].order;
      if (o == BondOrder::Aromatic) {
        ++aromatic;
      } else {
        sum += bond_code(o);
      }
    }
    sum += extra_h[static_cast<std::size_t>(i)];
    a.implicit_hydrogens = detail::default_hydrogens(a.atomic_number, a.is_aromatic && aromatic > 0,
                                                     sum, aromatic) +
                           extra_h[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < n; ++i) {
    if (atoms[static_cast<std::size_t>(i)].is_aromatic) {
      bool ring_atom = false;
      for (const Neighbor& nb : adj[static_cast<std::size_t>(i)]) {
        ring_atom = ring_atom || ring_bond[static_cast<std::size_t>(nb.bond)];
      }
      if (!ring_atom) throw ChemistryError("non-ring atom marked aromatic");
    }
  }
  for (const Bond& b : bonds) {
    if (b.order == BondOrder::Aromatic &&
        !(atoms[static_cast<std::size_t>(b.begin)].is_aromatic &&
          atoms[static_cast<std::size_t>(b.end)].is_aromatic)) {
      throw ChemistryError("aromatic bond between non-aromatic atoms");
    }
  }
  if (!detail::kekulize(atoms, bonds, adj)) {
    throw ChemistryError("cannot kekulize aromatic system");
  }
  const auto cycles = detail::shortest_cycles(adj, bonds, ring_bond);
  detail::perceive_aromaticity(atoms, bonds, adj, cycles, ring_bond);
  return Molecule(std::move(atoms), std::move(bonds));
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Valid: return "valid";
    case Verdict::SyntaxError: return "syntax_error";
    case Verdict::ChemistryError: return "chemistry_error";
  }
  return "unknown";
}

Validation validate(std::string_view text) {
  try {
    parse_smiles(text);
    return {};
  } catch (const SyntaxError& e) {
    return {Verdict::SyntaxError, e.what()};
  } catch (const Error& e) {
    return {Verdict::ChemistryError, e.what()};
  }
}

}  // namespace rxnlab
