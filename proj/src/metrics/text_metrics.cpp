#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "rxnlab/errors.hpp"
#include "rxnlab/metrics.hpp"

namespace rxnlab {

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // one DP row; short strings (the common SMILES case) stay on the stack
  std::array<std::size_t, 128> stack_row;
  std::vector<std::size_t> heap_row;
  std::size_t* row = stack_row.data();
  if (b.size() + 1 > stack_row.size()) {
    heap_row.resize(b.size() + 1);
    row = heap_row.data();
  }
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({diag + (a[i - 1] == b[j - 1] ? 0 : 1), up + 1, row[j - 1] + 1});
      diag = up;
    }
  }
  return row[b.size()];
}

BleuStats& BleuStats::operator+=(const BleuStats& o) {
  for (int n = 0; n < 4; ++n) {
    matches[n] += o.matches[n];
    totals[n] += o.totals[n];
  }
  pred_length += o.pred_length;
  ref_length += o.ref_length;
  return *this;
}

BleuStats bleu_stats(std::string_view prediction, std::string_view reference) {
  BleuStats s;
  s.pred_length = prediction.size();
  s.ref_length = reference.size();
  for (std::size_t n = 1; n <= 4; ++n) {
    std::map<std::string_view, std::size_t> ref_counts;
    for (std::size_t i = 0; i + n <= reference.size(); ++i) ++ref_counts[reference.substr(i, n)];
    std::map<std::string_view, std::size_t> pred_counts;
    for (std::size_t i = 0; i + n <= prediction.size(); ++i) ++pred_counts[prediction.substr(i, n)];
    for (const auto& [gram, count] : pred_counts) {
      const auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) s.matches[n - 1] += std::min(count, it->second);
      s.totals[n - 1] += count;
    }
  }
  return s;
}

double bleu_score(const BleuStats& s) {
  if (s.pred_length == 0 || s.totals[0] == 0 || s.matches[0] == 0) return 0.0;
  double log_sum = 0.0;
  for (int n = 0; n < 4; ++n) {
    double p = 0.0;
    if (n > 0 && s.matches[n] == 0) {
      p = 1.0 / static_cast<double>(s.totals[n] + 1);
    } else {
      p = static_cast<double>(s.matches[n]) / static_cast<double>(s.totals[n]);
    }
    log_sum += 0.25 * std::log(p);
  }
  const double c = static_cast<double>(s.pred_length);
  const double r = static_cast<double>(s.ref_length);
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return bp * std::exp(log_sum);
}

double bleu(const std::vector<std::string>& predictions, const std::vector<std::string>& references) {
  if (predictions.empty()) throw InvalidArgument("BLEU over an empty corpus");
  if (predictions.size() != references.size()) {
    throw InvalidArgument("BLEU needs as many predictions as references");
  }
  BleuStats total;
  for (std::size_t i = 0; i < predictions.size(); ++i) total += bleu_stats(predictions[i], references[i]);
  return bleu_score(total);
}

}  // namespace rxnlab
