#include "rxnlab/elements.hpp"

#include <array>
#include <cstdlib>

namespace rxnlab::elements {
namespace {

constexpr std::array<std::string_view, kMaxAtomicNumber + 1> kSymbols = {
    "?",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg", "Al", "Si",
    "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr", "Mn", "Fe", "Co", "Ni", "Cu",
    "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru",
    "Rh", "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
    "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W",
    "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac",
    "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf",
    "Db", "Sg", "Bh", "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

// Neutral valences; pnictogens/chalcogens/halogens shift by +charge,
// B by -charge, C and H by -|charge|.
std::optional<std::vector<int>> neutral_valences(int z) {
  switch (z) {
    case 1: return std::vector<int>{1};
    case 5: return std::vector<int>{3};
    case 6: return std::vector<int>{4};
    case 7: return std::vector<int>{3, 5};
    case 8: return std::vector<int>{2};
    case 15: return std::vector<int>{3, 5};
    case 16: return std::vector<int>{2, 4, 6};
    case 9:
    case 17:
    case 35:
    case 53: return std::vector<int>{1};
    case 33: return std::vector<int>{3, 5};
    case 34:
    case 52: return std::vector<int>{2, 4, 6};
    default: return std::nullopt;
  }
}

}  // namespace

std::string_view symbol(int atomic_number) {
  if (atomic_number < 1 || atomic_number > kMaxAtomicNumber) return kSymbols[0];
  return kSymbols[static_cast<std::size_t>(atomic_number)];
}

std::optional<int> atomic_number(std::string_view sym) {
  for (int z = 1; z <= kMaxAtomicNumber; ++z) {
    if (kSymbols[static_cast<std::size_t>(z)] == sym) return z;
  }
  return std::nullopt;
}

std::optional<std::vector<int>> allowed_valences(int z, int charge) {
  auto base = neutral_valences(z);
  if (!base || charge == 0) return base;
  int shift = 0;
  switch (z) {
    case 1:
    case 6: shift = -std::abs(charge); break;
    case 5: shift = -charge; break;
    default: shift = charge; break;
  }
  std::vector<int> out;
  for (int v : *base) {
    if (v + shift >= 0) out.push_back(v + shift);
  }
  if (out.empty()) out.push_back(0);
  return out;
}

bool in_organic_subset(int z) {
  switch (z) {
    case 5: case 6: case 7: case 8: case 9: case 15: case 16: case 17: case 35: case 53:
      return true;
    default:
      return false;
  }
}

bool may_be_aromatic(int z) {
  switch (z) {
    case 5: case 6: case 7: case 8: case 15: case 16: case 33: case 34: case 52:
      return true;
    default:
      return false;
  }
}

}  // namespace rxnlab::elements
