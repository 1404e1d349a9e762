#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "rxnlab/substructure.hpp"

namespace rxnlab::testing {

/// Edit distance straight from the recursive definition.
inline std::size_t naive_levenshtein(const std::string& a, const std::string& b, std::size_t i = 0,
                                     std::size_t j = 0) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  const std::size_t sub = naive_levenshtein(a, b, i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
  const std::size_t del = naive_levenshtein(a, b, i + 1, j) + 1;
  const std::size_t ins = naive_levenshtein(a, b, i, j + 1) + 1;
  return std::min({sub, del, ins});
}

struct InjectionResult {
  std::size_t embeddings = 0;
  std::set<std::vector<int>> atom_sets;
};

/// Tries every injective map from pattern atoms to molecule atoms.
inline InjectionResult all_injections(const Pattern& p, const Molecule& m) {
  InjectionResult out;
  const std::size_t qn = p.atom_count();
  std::vector<int> map(qn, -1);
  std::vector<bool> used(m.atom_count(), false);
  auto full_check = [&] {
    for (const QueryBond& qb : p.bonds()) {
      const auto b = m.bond_between(map[static_cast<std::size_t>(qb.begin)],
                                    map[static_cast<std::size_t>(qb.end)]);
      if (!b || !bond_matches(qb.expr, m, *b)) return false;
    }
    return true;
  };
  auto rec = [&](auto& self, std::size_t q) -> void {
    if (q == qn) {
      if (full_check()) {
        ++out.embeddings;
        std::vector<int> s = map;
        std::sort(s.begin(), s.end());
        out.atom_sets.insert(s);
      }
      return;
    }
    for (int a = 0; a < static_cast<int>(m.atom_count()); ++a) {
      if (used[static_cast<std::size_t>(a)]) continue;
      if (!atom_matches(p.atoms()[q].expr, m, a)) continue;
      used[static_cast<std::size_t>(a)] = true;
      map[q] = a;
      self(self, q + 1);
      used[static_cast<std::size_t>(a)] = false;
    }
  };
  rec(rec, 0);
  return out;
}

/// MCC from the sample covariance of one-hot gold and prediction vectors.
inline double mcc_by_covariance(const std::vector<std::vector<double>>& c) {
  const std::size_t k = c.size();
  double n = 0;
  std::vector<double> gold(k, 0), pred(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      n += c[i][j];
      gold[i] += c[i][j];
      pred[j] += c[i][j];
    }
  }
  // cov(X, Y) = sum_k E[x_k y_k] - E[x_k]E[y_k], scaled by n^2
  double cov_xy = 0, cov_xx = 0, cov_yy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    cov_xy += n * c[i][i] - gold[i] * pred[i];
    cov_xx += n * gold[i] - gold[i] * gold[i];
    cov_yy += n * pred[i] - pred[i] * pred[i];
  }
  if (cov_xx == 0 || cov_yy == 0) return 0.0;
  return cov_xy / std::sqrt(cov_xx * cov_yy);
}

/// Confusion entropy written term by term from its definition.
inline double cen_by_definition(const std::vector<std::vector<double>>& c) {
  const std::size_t n = c.size();
  long double total = 0;
  for (const auto& row : c)
    for (double v : row) total += v;
  const long double base = std::log(static_cast<long double>(2 * (n - 1)));
  long double cen = 0;
  for (std::size_t j = 0; j < n; ++j) {
    long double row = 0, col = 0;
    for (std::size_t k = 0; k < n; ++k) {
      row += c[j][k];
      col += c[k][j];
    }
    const long double denom_class = row + col;
    if (denom_class == 0) continue;
    const long double weight = denom_class / (2 * total);
    long double entropy = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const long double pjk = c[j][k] / denom_class;
      const long double pkj = c[k][j] / denom_class;
      if (pjk > 0) entropy -= pjk * std::log(pjk) / base;
      if (pkj > 0) entropy -= pkj * std::log(pkj) / base;
    }
    cen += weight * entropy;
  }
  return static_cast<double>(cen);
}

}  // namespace rxnlab::testing
