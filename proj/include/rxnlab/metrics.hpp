#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rxnlab/fingerprint.hpp"

namespace rxnlab {

/// Edit distance with unit insert, delete and substitute costs.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Clipped n-gram statistics of one prediction/reference pair.
struct BleuStats {
  std::size_t matches[4] = {0, 0, 0, 0};
  std::size_t totals[4] = {0, 0, 0, 0};
  std::size_t pred_length = 0;
  std::size_t ref_length = 0;

  BleuStats& operator+=(const BleuStats& o);
};

/// Character n-grams, n = 1..4.
BleuStats bleu_stats(std::string_view prediction, std::string_view reference);

/// Corpus BLEU from accumulated statistics. Orders 2..4 with zero matches
/// use (0 + 1) / (total + 1); a zero unigram precision gives 0.
double bleu_score(const BleuStats& stats);

/// Corpus BLEU over paired lists; throws InvalidArgument when empty or
/// unequal in length.
double bleu(const std::vector<std::string>& predictions, const std::vector<std::string>& references);

struct GenSample {
  std::string id;
  std::string prediction;
  std::string reference;
  std::string task;
};

struct GenSampleResult {
  std::string id;
  std::optional<std::string> error;  // invalid reference; sample left out of every metric
  bool valid = false;
  bool exact = false;
  std::size_t levenshtein = 0;
  std::optional<double> fts_path;
  std::optional<double> fts_key;
  std::optional<double> fts_circular;
  BleuStats bleu;
};

struct GenFingerprints {
  FingerprintSpec path = FingerprintSpec::path();
  FingerprintSpec key = FingerprintSpec::key();
  FingerprintSpec circular = FingerprintSpec::circular();
};

GenSampleResult score_generation(const GenSample& sample, const GenFingerprints& fps = {});

/// Named metric values; nullopt marks a metric that is undefined for the run.
struct MetricReport {
  std::string family;  // generation, classification, regression, selection
  std::size_t sample_count = 0;
  std::vector<std::pair<std::string, std::optional<double>>> metrics;
  std::vector<std::pair<std::string, std::string>> errors;  // (id, message)

  /// Throws InvalidArgument when the report has no such metric.
  std::optional<double> get(std::string_view name) const;
  nlohmann::ordered_json to_json() const;
};

MetricReport aggregate_generation(const std::vector<GenSampleResult>& results);

/// Scores samples on `workers` threads; the report does not depend on the
/// worker count.
MetricReport eval_generation(const std::vector<GenSample>& samples, const GenFingerprints& fps = {},
                             int workers = 1, std::vector<GenSampleResult>* detail = nullptr);

nlohmann::ordered_json to_json(const GenSampleResult& r);

using ConfusionMatrix = std::vector<std::vector<double>>;  // [gold][pred]

ConfusionMatrix confusion_matrix(const std::vector<std::pair<int, int>>& pairs, int n_classes);
double confusion_entropy(const ConfusionMatrix& c);
double matthews_corrcoef(const ConfusionMatrix& c);

/// (gold, pred) labels in [0, n_classes); throws InvalidArgument for
/// n_classes < 2, labels out of range or no pairs.
MetricReport eval_classification(const std::vector<std::pair<int, int>>& pairs, int n_classes);

/// Throws InvalidArgument with fewer than 2 samples or unequal lengths.
/// r2 is undefined (nullopt) when the golds are constant.
MetricReport eval_regression(const std::vector<double>& golds, const std::vector<double>& preds);

struct SelectionSample {
  std::string id;
  std::string gold;
  std::string prediction;
  std::vector<std::string> candidates;
  std::map<std::string, int> yield_ranks;  // candidate -> 1-based yield rank
};

/// top1 always; top50 when `with_top50` (every sample then needs a rank for
/// its prediction, else InvalidArgument). Predictions outside the candidate
/// list score 0 and are listed in the errors.
MetricReport eval_selection(const std::vector<SelectionSample>& samples, bool with_top50);

}  // namespace rxnlab
