#include <algorithm>
#include <set>

#include "rxnlab/substructure.hpp"

namespace rxnlab {

namespace {

using Op = QueryExpr::Op;
using Prim = QueryExpr::Prim;

int total_hydrogens(const Molecule& mol, int atom) {
  int h = mol.atom(atom).implicit_hydrogens;
  for (const Neighbor& nb : mol.neighbors(atom)) {
    if (mol.atom(nb.atom).atomic_number == 1) ++h;
  }
  return h;
}

template <typename LeafFn>
bool evaluate(const QueryExpr& e, LeafFn&& leaf) {
  switch (e.op) {
    case Op::Leaf: return leaf(e);
    case Op::Not: return !evaluate(e.children.front(), leaf);
    case Op::And:
      return std::all_of(e.children.begin(), e.children.end(),
                         [&](const QueryExpr& c) { return evaluate(c, leaf); });
    case Op::Or:
      return std::any_of(e.children.begin(), e.children.end(),
                         [&](const QueryExpr& c) { return evaluate(c, leaf); });
  }
  return false;
}

}  // namespace

bool atom_matches(const QueryExpr& expr, const Molecule& mol, int atom) {
  const Atom& a = mol.atom(atom);
  return evaluate(expr, [&](const QueryExpr& e) {
    switch (e.prim) {
      case Prim::True: return true;
      case Prim::AtomicNumber: return a.atomic_number == e.value;
      case Prim::Aromatic: return a.is_aromatic;
      case Prim::Aliphatic: return !a.is_aromatic;
      case Prim::InRing: return mol.atom_in_ring(atom);
      case Prim::RingCount: return mol.ring_count(atom) == e.value;
      case Prim::Degree: return mol.degree(atom) == e.value;
      case Prim::HydrogenCount: return total_hydrogens(mol, atom) == e.value;
      case Prim::Charge: return a.formal_charge == e.value;
      default: return false;
    }
  });
}

bool bond_matches(const QueryExpr& expr, const Molecule& mol, int bond) {
  const Bond& b = mol.bond(bond);
  return evaluate(expr, [&](const QueryExpr& e) {
    switch (e.prim) {
      case Prim::True: return true;
      case Prim::BondSingle: return b.order == BondOrder::Single;
      case Prim::BondDouble: return b.order == BondOrder::Double;
      case Prim::BondTriple: return b.order == BondOrder::Triple;
      case Prim::BondAromatic: return b.order == BondOrder::Aromatic;
      case Prim::BondRing: return mol.bond_in_ring(bond);
      default: return false;
    }
  });
}

namespace {

struct QueryEdge {
  int other;
  const QueryExpr* expr;
};

// Backtracking subgraph monomorphism. Query atoms are visited in an order
// that starts from the atom with the fewest candidates and then grows along
// query bonds, so every later atom is constrained by a mapped neighbour.
class Matcher {
 public:
  Matcher(const Pattern& p, const Molecule& m) : p_(p), m_(m) {
    const std::size_t qn = p.atom_count();
    q_adj_.resize(qn);
    for (const QueryBond& b : p.bonds()) {
      q_adj_[static_cast<std::size_t>(b.begin)].push_back({b.end, &b.expr});
      q_adj_[static_cast<std::size_t>(b.end)].push_back({b.begin, &b.expr});
    }
    candidates_.resize(qn);
    for (std::size_t q = 0; q < qn; ++q) {
      for (int a = 0; a < static_cast<int>(m.atom_count()); ++a) {
        if (m.degree(a) >= static_cast<int>(q_adj_[q].size()) &&
            atom_matches(p.atoms()[q].expr, m, a)) {
          candidates_[q].push_back(a);
        }
      }
    }
    plan();
    mapping_.assign(qn, -1);
    used_.assign(m.atom_count(), false);
  }

  // Calls visit(mapping) for each embedding; visit returns false to stop.
  template <typename Visit>
  void run(Visit&& visit) {
    if (p_.atom_count() > m_.atom_count()) return;
    for (const auto& c : candidates_) {
      if (c.empty()) return;
    }
    stop_ = false;
    extend(0, visit);
  }

 private:
  void plan() {
    const std::size_t qn = p_.atom_count();
    std::vector<bool> placed(qn, false);
    order_.clear();
    anchor_.clear();
    while (order_.size() < qn) {
      // rarest unplaced atom overall starts a new component
      int best = -1;
      for (std::size_t q = 0; q < qn; ++q) {
        if (!placed[q] && (best < 0 || candidates_[q].size() <
                                           candidates_[static_cast<std::size_t>(best)].size())) {
          best = static_cast<int>(q);
        }
      }
      std::vector<int> frontier{best};
      placed[static_cast<std::size_t>(best)] = true;
      order_.push_back(best);
      anchor_.push_back(-1);
      for (;;) {
        int next = -1;
        int via = -1;
        for (std::size_t k = 0; k < order_.size(); ++k) {
          const int q = order_[k];
          for (const QueryEdge& e : q_adj_[static_cast<std::size_t>(q)]) {
            if (placed[static_cast<std::size_t>(e.other)]) continue;
            if (next < 0 || candidates_[static_cast<std::size_t>(e.other)].size() <
                                candidates_[static_cast<std::size_t>(next)].size()) {
              next = e.other;
              via = q;
            }
          }
        }
        if (next < 0) break;
        placed[static_cast<std::size_t>(next)] = true;
        order_.push_back(next);
        anchor_.push_back(via);
      }
    }
  }

  bool consistent(int q, int a) const {
    if (used_[static_cast<std::size_t>(a)]) return false;
    for (const QueryEdge& e : q_adj_[static_cast<std::size_t>(q)]) {
      const int image = mapping_[static_cast<std::size_t>(e.other)];
      if (image < 0) continue;
      const auto bond = m_.bond_between(a, image);
      if (!bond || !bond_matches(*e.expr, m_, *bond)) return false;
    }
    return true;
  }

  bool admissible(int q, int a) const {
    return std::binary_search(candidates_[static_cast<std::size_t>(q)].begin(),
                              candidates_[static_cast<std::size_t>(q)].end(), a);
  }

  template <typename Visit>
  void extend(std::size_t depth, Visit& visit) {
    if (stop_) return;
    if (depth == order_.size()) {
      if (!visit(mapping_)) stop_ = true;
      return;
    }
    const int q = order_[depth];
    const int anchor = anchor_[depth];
    auto attempt = [&](int a) {
      if (!consistent(q, a)) return;
      mapping_[static_cast<std::size_t>(q)] = a;
      used_[static_cast<std::size_t>(a)] = true;
      extend(depth + 1, visit);
      used_[static_cast<std::size_t>(a)] = false;
      mapping_[static_cast<std::size_t>(q)] = -1;
    };
    if (anchor >= 0) {
      for (const Neighbor& nb : m_.neighbors(mapping_[static_cast<std::size_t>(anchor)])) {
        if (stop_) return;
        if (admissible(q, nb.atom)) attempt(nb.atom);
      }
    } else {
      for (int a : candidates_[static_cast<std::size_t>(q)]) {
        if (stop_) return;
        attempt(a);
      }
    }
  }

  const Pattern& p_;
  const Molecule& m_;
  std::vector<std::vector<QueryEdge>> q_adj_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> order_;
  std::vector<int> anchor_;
  std::vector<int> mapping_;
  std::vector<bool> used_;
  bool stop_ = false;
};

}  // namespace

bool has_match(const Pattern& pattern, const Molecule& mol) {
  bool found = false;
  Matcher(pattern, mol).run([&](const std::vector<int>&) {
    found = true;
    return false;
  });
  return found;
}

std::size_t count_matches(const Pattern& pattern, const Molecule& mol, std::size_t limit) {
  std::set<std::vector<int>> sets;
  if (limit == 0) return 0;
  Matcher(pattern, mol).run([&](const std::vector<int>& mapping) {
    std::vector<int> s = mapping;
    std::sort(s.begin(), s.end());
    sets.insert(std::move(s));
    return sets.size() < limit;
  });
  return sets.size();
}

std::vector<std::vector<int>> find_embeddings(const Pattern& pattern, const Molecule& mol) {
  std::vector<std::vector<int>> out;
  Matcher(pattern, mol).run([&](const std::vector<int>& mapping) {
    out.push_back(mapping);
    return true;
  });
  return out;
}

}  // namespace rxnlab
