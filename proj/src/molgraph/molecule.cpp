#include "rxnlab/molecule.hpp"

#include <algorithm>
#include <numeric>

#include "graph_algos.hpp"
#include "rxnlab/elements.hpp"
#include "rxnlab/errors.hpp"

namespace rxnlab {

Molecule::Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)) {
  const int n = static_cast<int>(atoms_.size());
  for (const Atom& a : atoms_) {
    if (a.atomic_number < 1 || a.atomic_number > elements::kMaxAtomicNumber) {
      throw InvalidArgument("atomic number out of range: " + std::to_string(a.atomic_number));
    }
    if (a.implicit_hydrogens < 0) throw InvalidArgument("negative hydrogen count");
  }
  for (const Bond& b : bonds_) {
    if (b.begin < 0 || b.end < 0 || b.begin >= n || b.end >= n) {
      throw InvalidArgument("bond endpoint out of range");
    }
    if (b.begin == b.end) throw ChemistryError("bond from an atom to itself");
  }
  adjacency_ = detail::build_adjacency(n, bonds_);
  for (auto& nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end(),
              [](const Neighbor& x, const Neighbor& y) { return x.atom < y.atom; });
    for (std::size_t k = 1; k < nbrs.size(); ++k) {
      if (nbrs[k].atom == nbrs[k - 1].atom) throw ChemistryError("parallel bonds between one atom pair");
    }
  }

  bond_in_ring_ = detail::find_ring_bonds(adjacency_, static_cast<int>(bonds_.size()));
  atom_in_ring_.assign(atoms_.size(), false);
  for (std::size_t b = 0; b < bonds_.size(); ++b) {
    if (!bond_in_ring_[b]) continue;
    atom_in_ring_[static_cast<std::size_t>(bonds_[b].begin)] = true;
    atom_in_ring_[static_cast<std::size_t>(bonds_[b].end)] = true;
  }
  auto cycles = detail::shortest_cycles(adjacency_, bonds_, bond_in_ring_);
  rings_ = detail::smallest_ring_basis(std::move(cycles), adjacency_, bonds_, bond_in_ring_);
  ring_count_.assign(atoms_.size(), 0);
  for (const Ring& r : rings_) {
    for (int a : r.atoms) ++ring_count_[static_cast<std::size_t>(a)];
  }

  for (int i = 0; i < n; ++i) {
    if (atoms_[static_cast<std::size_t>(i)].is_aromatic && !atom_in_ring_[static_cast<std::size_t>(i)]) {
      throw ChemistryError("non-ring atom " + std::to_string(i) + " marked aromatic");
    }
  }
  for (const Bond& b : bonds_) {
    if (b.order == BondOrder::Aromatic &&
        !(atoms_[static_cast<std::size_t>(b.begin)].is_aromatic &&
          atoms_[static_cast<std::size_t>(b.end)].is_aromatic)) {
      throw ChemistryError("aromatic bond between non-aromatic atoms");
    }
  }

  const auto kekule = detail::kekulize(atoms_, bonds_, adjacency_);
  if (!kekule) throw ChemistryError("cannot kekulize aromatic system");
  for (int i = 0; i < n; ++i) {
    const Atom& a = atoms_[static_cast<std::size_t>(i)];
    const auto allowed = elements::allowed_valences(a.atomic_number, a.formal_charge);
    if (!allowed) {
      unchecked_valence_ = true;
      continue;
    }
    int total = a.implicit_hydrogens;
    for (const Neighbor& nb : adjacency_[static_cast<std::size_t>(i)]) {
      total += bond_code((*kekule)[static_cast<std::size_t>(nb.bond)]);
    }
    if (total > allowed->back()) {
      throw ChemistryError("valence " + std::to_string(total) + " exceeds maximum for " +
                           std::string(elements::symbol(a.atomic_number)) + " (atom " +
                           std::to_string(i) + ")");
    }
  }

  fragment_.assign(atoms_.size(), -1);
  for (int s = 0; s < n; ++s) {
    if (fragment_[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<int> todo{s};
    fragment_[static_cast<std::size_t>(s)] = fragment_count_;
    while (!todo.empty()) {
      const int a = todo.back();
      todo.pop_back();
      for (const Neighbor& nb : adjacency_[static_cast<std::size_t>(a)]) {
        if (fragment_[static_cast<std::size_t>(nb.atom)] < 0) {
          fragment_[static_cast<std::size_t>(nb.atom)] = fragment_count_;
          todo.push_back(nb.atom);
        }
      }
    }
    ++fragment_count_;
  }
}

std::optional<int> Molecule::bond_between(int a, int b) const {
  for (const Neighbor& nb : neighbors(a)) {
    if (nb.atom == b) return nb.bond;
  }
  return std::nullopt;
}

int Molecule::heavy_atom_count() const {
  return static_cast<int>(std::count_if(atoms_.begin(), atoms_.end(),
                                        [](const Atom& a) { return a.atomic_number > 1; }));
}

Molecule renumber_atoms(const Molecule& mol, std::span<const int> new_index) {
  const std::size_t n = mol.atom_count();
  if (new_index.size() != n) throw InvalidArgument("permutation size mismatch");
  std::vector<bool> hit(n, false);
  for (int v : new_index) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || hit[static_cast<std::size_t>(v)]) {
      throw InvalidArgument("not a permutation");
    }
    hit[static_cast<std::size_t>(v)] = true;
  }
  std::vector<Atom> atoms(n);
  for (std::size_t i = 0; i < n; ++i) {
    atoms[static_cast<std::size_t>(new_index[i])] = mol.atom(static_cast<int>(i));
  }
  std::vector<Bond> bonds;
  bonds.reserve(mol.bond_count());
  for (const Bond& b : mol.bonds()) {
    Bond nb = b;
    nb.begin = new_index[static_cast<std::size_t>(b.begin)];
    nb.end = new_index[static_cast<std::size_t>(b.end)];
    bonds.push_back(nb);
  }
  return Molecule(std::move(atoms), std::move(bonds));
}

Molecule induced_submolecule(const Molecule& mol, const std::vector<bool>& keep) {
  const std::size_t n = mol.atom_count();
  if (keep.size() != n) throw InvalidArgument("mask size mismatch");
  std::vector<int> index(n, -1);
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    index[i] = static_cast<int>(atoms.size());
    atoms.push_back(mol.atom(static_cast<int>(i)));
  }
  std::vector<Bond> bonds;
  for (const Bond& b : mol.bonds()) {
    const int u = index[static_cast<std::size_t>(b.begin)];
    const int v = index[static_cast<std::size_t>(b.end)];
    if (u >= 0 && v >= 0) {
      Bond nb = b;
      nb.begin = u;
      nb.end = v;
      bonds.push_back(nb);
    } else if (u >= 0 || v >= 0) {
      // severed bond: the surviving atom picks up hydrogens
      const int kept = u >= 0 ? u : v;
      const int order = b.order == BondOrder::Aromatic ? 1 : bond_code(b.order);
      atoms[static_cast<std::size_t>(kept)].implicit_hydrogens += order;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i] && mol.atom(static_cast<int>(i)).chirality != Chirality::None) {
      // a severed substituent invalidates the declared parity
      bool severed = false;
      for (const Neighbor& nb : mol.neighbors(static_cast<int>(i))) {
        severed = severed || !keep[static_cast<std::size_t>(nb.atom)];
      }
      if (severed) atoms[static_cast<std::size_t>(index[i])].chirality = Chirality::None;
    }
  }
  return Molecule(std::move(atoms), std::move(bonds));
}

std::vector<Molecule> split_fragments(const Molecule& mol) {
  std::vector<Molecule> out;
  if (mol.fragment_count() <= 1) {
    if (!mol.empty()) out.push_back(mol);
    return out;
  }
  for (int f = 0; f < mol.fragment_count(); ++f) {
    std::vector<bool> keep(mol.atom_count());
    for (std::size_t i = 0; i < mol.atom_count(); ++i) keep[i] = mol.fragment_ids()[i] == f;
    out.push_back(induced_submolecule(mol, keep));
  }
  return out;
}

}  // namespace rxnlab
