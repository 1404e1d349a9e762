#include <algorithm>
#include <cmath>

#include "rxnlab/errors.hpp"
#include "rxnlab/metrics.hpp"

namespace rxnlab {

ConfusionMatrix confusion_matrix(const std::vector<std::pair<int, int>>& pairs, int n_classes) {
  if (n_classes < 2) throw InvalidArgument("classification needs at least 2 classes");
  const auto n = static_cast<std::size_t>(n_classes);
  ConfusionMatrix c(n, std::vector<double>(n, 0.0));
  for (const auto& [gold, pred] : pairs) {
    if (gold < 0 || gold >= n_classes || pred < 0 || pred >= n_classes) {
      throw InvalidArgument("label out of range [0, " + std::to_string(n_classes) + ")");
    }
    c[static_cast<std::size_t>(gold)][static_cast<std::size_t>(pred)] += 1.0;
  }
  return c;
}

double confusion_entropy(const ConfusionMatrix& c) {
  const std::size_t n = c.size();
  if (n < 2) throw InvalidArgument("confusion entropy needs at least 2 classes");
  double total = 0.0;
  for (const auto& row : c) {
    for (double v : row) total += v;
  }
  if (total == 0.0) throw InvalidArgument("empty confusion matrix");
  const double log_base = std::log(2.0 * static_cast<double>(n - 1));
  auto plogp = [&](double p) { return p > 0.0 ? p * std::log(p) / log_base : 0.0; };
  double cen = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double mass = 0.0;
    for (std::size_t m = 0; m < n; ++m) mass += c[j][m] + c[m][j];
    if (mass == 0.0) continue;
    double cen_j = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      cen_j -= plogp(c[j][k] / mass) + plogp(c[k][j] / mass);
    }
    cen += mass / (2.0 * total) * cen_j;
  }
  return cen;
}

double matthews_corrcoef(const ConfusionMatrix& c) {
  const std::size_t n = c.size();
  double s = 0.0;
  double trace = 0.0;
  std::vector<double> t(n, 0.0);
  std::vector<double> p(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    trace += c[i][i];
    for (std::size_t k = 0; k < n; ++k) {
      s += c[i][k];
      t[i] += c[i][k];
      p[k] += c[i][k];
    }
  }
  double tp = 0.0;
  double pp = 0.0;
  double tt = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    tp += t[k] * p[k];
    pp += p[k] * p[k];
    tt += t[k] * t[k];
  }
  const double a = s * s - pp;
  const double b = s * s - tt;
  if (a == 0.0 || b == 0.0) return 0.0;
  return (trace * s - tp) / std::sqrt(a * b);
}

MetricReport eval_classification(const std::vector<std::pair<int, int>>& pairs, int n_classes) {
  if (pairs.empty()) throw InvalidArgument("classification over no samples");
  const ConfusionMatrix c = confusion_matrix(pairs, n_classes);
  double trace = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) trace += c[i][i];
  MetricReport r;
  r.family = "classification";
  r.sample_count = pairs.size();
  r.metrics = {{"accuracy", trace / static_cast<double>(pairs.size())},
               {"cen", confusion_entropy(c)},
               {"mcc", matthews_corrcoef(c)}};
  return r;
}

MetricReport eval_regression(const std::vector<double>& golds, const std::vector<double>& preds) {
  if (golds.size() != preds.size()) throw InvalidArgument("regression needs paired golds and predictions");
  if (golds.size() < 2) throw InvalidArgument("regression needs at least 2 samples");
  const double n = static_cast<double>(golds.size());
  double mean = 0.0;
  for (double g : golds) mean += g;
  mean /= n;
  double abs_sum = 0.0;
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    const double e = preds[i] - golds[i];
    abs_sum += std::abs(e);
    ss_res += e * e;
    ss_tot += (golds[i] - mean) * (golds[i] - mean);
  }
  MetricReport r;
  r.family = "regression";
  r.sample_count = golds.size();
  std::optional<double> r2;
  if (ss_tot > 0.0) r2 = 1.0 - ss_res / ss_tot;
  r.metrics = {{"mae", abs_sum / n}, {"mse", ss_res / n}, {"r2", r2}};
  if (!r2) r.errors.emplace_back("", "r2 undefined: gold values are constant");
  return r;
}

MetricReport eval_selection(const std::vector<SelectionSample>& samples, bool with_top50) {
  if (samples.empty()) throw InvalidArgument("selection over no samples");
  std::size_t top1 = 0;
  std::size_t top50 = 0;
  MetricReport r;
  r.family = "selection";
  r.sample_count = samples.size();
  for (const SelectionSample& s : samples) {
    const bool listed = std::find(s.candidates.begin(), s.candidates.end(), s.prediction) != s.candidates.end();
    if (!listed) {
      r.errors.emplace_back(s.id, "prediction '" + s.prediction + "' is not a candidate");
      continue;
    }
    if (s.prediction == s.gold) ++top1;
    if (with_top50) {
      const auto it = s.yield_ranks.find(s.prediction);
      if (it == s.yield_ranks.end()) {
        throw InvalidArgument("record " + s.id + ": top50 needs a yield rank for the predicted candidate");
      }
      const auto half = static_cast<int>((s.candidates.size() + 1) / 2);
      if (it->second >= 1 && it->second <= half) ++top50;
    }
  }
  const double n = static_cast<double>(samples.size());
  r.metrics.emplace_back("selection_top1", static_cast<double>(top1) / n);
  if (with_top50) r.metrics.emplace_back("selection_top50", static_cast<double>(top50) / n);
  return r;
}

}  // namespace rxnlab
