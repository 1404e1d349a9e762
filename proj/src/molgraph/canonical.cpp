#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "graph_algos.hpp"
#include "rxnlab/elements.hpp"
#include "rxnlab/errors.hpp"
#include "rxnlab/smiles.hpp"

namespace rxnlab {
namespace {

using Invariant = std::tuple<int, int, int, int, int, int, int>;

// Dense ranks (0..k-1) from arbitrary comparable keys; returns class count.
template <typename Key>
int dense_ranks(const std::vector<Key>& keys, std::vector<int>& ranks) {
  const std::size_t n = keys.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)];
  });
  ranks.assign(n, 0);
  int cls = -1;
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(order[k]);
    if (k == 0 || keys[static_cast<std::size_t>(order[k - 1])] < keys[i]) ++cls;
    ranks[i] = cls;
  }
  return cls + 1;
}

int refine(const Molecule& mol, std::vector<int>& ranks, int classes) {
  const std::size_t n = mol.atom_count();
  using Key = std::pair<int, std::vector<std::pair<int, int>>>;
  for (;;) {
    std::vector<Key> keys(n);
    for (std::size_t i = 0; i < n; ++i) {
      keys[i].first = ranks[i];
      for (const Neighbor& nb : mol.neighbors(static_cast<int>(i))) {
        keys[i].second.emplace_back(bond_code(mol.bond(nb.bond).order),
                                    ranks[static_cast<std::size_t>(nb.atom)]);
      }
      std::sort(keys[i].second.begin(), keys[i].second.end());
    }
    const int next = dense_ranks(keys, ranks);
    if (next == classes) return classes;
    classes = next;
  }
}

}  // namespace

std::vector<int> canonical_ranks(const Molecule& mol) {
  const std::size_t n = mol.atom_count();
  std::vector<Invariant> inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& a = mol.atom(static_cast<int>(i));
    inv[i] = {a.atomic_number,   mol.degree(static_cast<int>(i)), a.formal_charge,
              a.implicit_hydrogens, mol.atom_in_ring(static_cast<int>(i)) ? 1 : 0,
              a.isotope.value_or(0), a.is_aromatic ? 1 : 0};
  }
  std::vector<int> ranks;
  int classes = refine(mol, ranks, dense_ranks(inv, ranks));
  while (static_cast<std::size_t>(classes) < n) {
    std::vector<int> size(static_cast<std::size_t>(classes), 0);
    for (int r : ranks) ++size[static_cast<std::size_t>(r)];
    int tied = 0;
    while (size[static_cast<std::size_t>(tied)] < 2) ++tied;
    bool done = false;
    for (std::size_t i = 0; i < n; ++i) {
      const int r = ranks[i];
      ranks[i] = 2 * r + ((r == tied && !done) ? 0 : 1);
      if (r == tied) done = true;
    }
    std::vector<int> spread = ranks;
    classes = refine(mol, ranks, dense_ranks(spread, ranks));
  }
  return ranks;
}

namespace {

class Writer {
 public:
  Writer(const Molecule& mol, const std::vector<int>& ranks)
      : mol_(mol),
        ranks_(ranks),
        visited_(mol.atom_count(), false),
        bond_used_(mol.bond_count(), false),
        children_(mol.atom_count()),
        opens_(mol.atom_count()),
        closes_(mol.atom_count()),
        digit_(mol.bond_count(), -1) {
    if (ranks.size() != mol.atom_count()) throw InvalidArgument("rank vector size mismatch");
  }

  std::string run() {
    std::vector<int> order(mol_.atom_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return ranks_[static_cast<std::size_t>(a)] < ranks_[static_cast<std::size_t>(b)];
    });
    std::string out;
    for (int start : order) {
      if (visited_[static_cast<std::size_t>(start)]) continue;
      discover(start, -1);
      if (!out.empty()) out += '.';
      emit(start, -1, -1, out);
    }
    return out;
  }

 private:
  std::vector<Neighbor> ranked_neighbors(int atom) const {
    const auto span = mol_.neighbors(atom);
    std::vector<Neighbor> nbrs(span.begin(), span.end());
    std::sort(nbrs.begin(), nbrs.end(), [&](const Neighbor& x, const Neighbor& y) {
      return ranks_[static_cast<std::size_t>(x.atom)] < ranks_[static_cast<std::size_t>(y.atom)];
    });
    return nbrs;
  }

  void discover(int atom, int parent_bond) {
    visited_[static_cast<std::size_t>(atom)] = true;
    if (parent_bond >= 0) bond_used_[static_cast<std::size_t>(parent_bond)] = true;
    for (const Neighbor& nb : ranked_neighbors(atom)) {
      if (bond_used_[static_cast<std::size_t>(nb.bond)]) continue;
      if (visited_[static_cast<std::size_t>(nb.atom)]) {
        bond_used_[static_cast<std::size_t>(nb.bond)] = true;
        opens_[static_cast<std::size_t>(nb.atom)].push_back({atom, nb.bond});
        closes_[static_cast<std::size_t>(atom)].push_back({nb.atom, nb.bond});
      } else {
        children_[static_cast<std::size_t>(atom)].push_back(nb);
        discover(nb.atom, nb.bond);
      }
    }
  }

  std::string bond_symbol(int bond, int from) const {
    const Bond& b = mol_.bond(bond);
    const bool both_aromatic = mol_.atom(b.begin).is_aromatic && mol_.atom(b.end).is_aromatic;
    switch (b.order) {
      case BondOrder::Single:
        if (b.stereo != BondStereo::None) {
          const bool forward = from == b.begin;
          const bool up = (b.stereo == BondStereo::Up) == forward;
          return up ? "/" : "\\";
        }
        return both_aromatic ? "-" : "";
      case BondOrder::Double: return "=";
      case BondOrder::Triple: return "#";
      case BondOrder::Aromatic: return both_aromatic ? "" : ":";
    }
    return "";
  }

  static std::string ring_label(int d) {
    if (d < 10) return std::string(1, static_cast<char>('0' + d));
    if (d > 99) throw ChemistryError("more than 99 simultaneously open ring bonds");
    return "%" + std::to_string(d);
  }

  std::string atom_text(int idx) const {
    const Atom& a = mol_.atom(idx);
    const std::string_view sym = elements::symbol(a.atomic_number);
    const bool lower_ok = a.is_aromatic && (a.atomic_number == 5 || a.atomic_number == 6 ||
                                            a.atomic_number == 7 || a.atomic_number == 8 ||
                                            a.atomic_number == 15 || a.atomic_number == 16);
    if (elements::in_organic_subset(a.atomic_number) && a.formal_charge == 0 && !a.isotope &&
        a.chirality == Chirality::None && (!a.is_aromatic || lower_ok)) {
      int sum = 0;
      int aromatic = 0;
      for (const Neighbor& nb : mol_.neighbors(idx)) {
        const BondOrder o = mol_.bond(nb.bond).order;
        if (o == BondOrder::Aromatic) {
          ++aromatic;
        } else {
          sum += bond_code(o);
        }
      }
      const int implied =
          detail::default_hydrogens(a.atomic_number, a.is_aromatic && aromatic > 0, sum, aromatic);
      if (implied == a.implicit_hydrogens) {
        std::string s(sym);
        if (a.is_aromatic) s[0] = static_cast<char>(s[0] - 'A' + 'a');
        return s;
      }
    }
    std::string s = "[";
    if (a.isotope) s += std::to_string(*a.isotope);
    std::string symbol(sym);
    if (a.is_aromatic) symbol[0] = static_cast<char>(symbol[0] - 'A' + 'a');
    s += symbol;
    if (a.chirality == Chirality::CounterClockwise) s += "@";
    if (a.chirality == Chirality::Clockwise) s += "@@";
    if (a.implicit_hydrogens > 0) {
      s += "H";
      if (a.implicit_hydrogens > 1) s += std::to_string(a.implicit_hydrogens);
    }
    if (a.formal_charge != 0) {
      s += a.formal_charge > 0 ? "+" : "-";
      const int m = std::abs(a.formal_charge);
      if (m > 1) s += std::to_string(m);
    }
    s += "]";
    return s;
  }

  int take_digit() {
    int d = 1;
    while (free_.count(d)) ++d;
    free_.insert(d);
    return d;
  }

  void emit(int atom, int from_atom, int from_bond, std::string& out) {
    if (from_bond >= 0) out += bond_symbol(from_bond, from_atom);
    out += atom_text(atom);
    std::vector<int> released;
    for (const Neighbor& c : closes_[static_cast<std::size_t>(atom)]) {
      const int d = digit_[static_cast<std::size_t>(c.bond)];
      out += ring_label(d);
      released.push_back(d);
    }
    for (const Neighbor& o : opens_[static_cast<std::size_t>(atom)]) {
      const int d = take_digit();
      digit_[static_cast<std::size_t>(o.bond)] = d;
      out += bond_symbol(o.bond, atom);
      out += ring_label(d);
    }
    for (int d : released) free_.erase(d);
    const auto& kids = children_[static_cast<std::size_t>(atom)];
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const bool branch = k + 1 < kids.size();
      if (branch) out += '(';
      emit(kids[k].atom, atom, kids[k].bond, out);
      if (branch) out += ')';
    }
  }

  const Molecule& mol_;
  const std::vector<int>& ranks_;
  std::vector<bool> visited_;
  std::vector<bool> bond_used_;
  std::vector<std::vector<Neighbor>> children_;
  std::vector<std::vector<Neighbor>> opens_;
  std::vector<std::vector<Neighbor>> closes_;
  std::vector<int> digit_;
  std::set<int> free_;  // digits currently in use
};

}  // namespace

std::string write_smiles(const Molecule& mol, const std::vector<int>& ranks) {
  return Writer(mol, ranks).run();
}

std::string canonical_smiles(const Molecule& mol) {
  if (mol.empty()) return "";
  if (mol.fragment_count() == 1) return write_smiles(mol, canonical_ranks(mol));
  std::vector<std::string> parts;
  for (const Molecule& frag : split_fragments(mol)) {
    parts.push_back(write_smiles(frag, canonical_ranks(frag)));
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += '.';
    out += p;
  }
  return out;
}

std::string molecular_formula(const Molecule& mol) {
  std::map<std::string, int> counts;
  int hydrogens = 0;
  for (const Atom& a : mol.atoms()) {
    hydrogens += a.implicit_hydrogens;
    if (a.atomic_number == 1) {
      ++hydrogens;
    } else {
      ++counts[std::string(elements::symbol(a.atomic_number))];
    }
  }
  auto term = [](const std::string& sym, int n) {
    return n == 1 ? sym : sym + std::to_string(n);
  };
  std::string out;
  const auto carbon = counts.find("C");
  if (carbon != counts.end()) {
    out += term("C", carbon->second);
    counts.erase(carbon);
    if (hydrogens > 0) out += term("H", hydrogens);
  } else if (hydrogens > 0) {
    counts["H"] = hydrogens;
  }
  for (const auto& [sym, n] : counts) out += term(sym, n);
  return out;
}

}  // namespace rxnlab
