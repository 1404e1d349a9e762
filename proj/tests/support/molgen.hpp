#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rxnlab/molecule.hpp"

namespace rxnlab::testing {

/// Random drug-like SMILES built from ring systems, linkers and small
/// substituents. Same seed, same sequence.
class MoleculeGenerator {
 public:
  explicit MoleculeGenerator(std::uint64_t seed) : rng_(seed) {}

  std::string next_smiles();
  /// Ring system with optional substituents; always has at least one ring.
  std::string next_cyclic_smiles();
  /// Parsed molecules; every generated string is expected to parse.
  std::vector<Molecule> molecules(std::size_t n);

  std::mt19937_64& rng() { return rng_; }

 private:
  std::string ring_system(int depth);
  std::string leaf();
  std::string linker();
  std::string chain();
  std::string ring_label();
  bool coin(double p);
  std::size_t pick(std::size_t n);

  std::mt19937_64 rng_;
  int next_ring_ = 1;
};

std::vector<int> random_permutation(std::size_t n, std::mt19937_64& rng);

/// Same molecule with atoms shuffled.
Molecule shuffled(const Molecule& mol, std::mt19937_64& rng);

/// A valid, usually non-canonical SMILES of `mol` (random traversal order).
std::string random_smiles(const Molecule& mol, std::mt19937_64& rng);

/// Non-empty, non-comment lines of a .smi file (first column).
std::vector<std::string> read_smiles_file(const std::string& path);

}  // namespace rxnlab::testing
