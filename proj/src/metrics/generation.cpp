#include "rxnlab/errors.hpp"
#include "rxnlab/metrics.hpp"
#include "rxnlab/parallel.hpp"
#include "rxnlab/smiles.hpp"

namespace rxnlab {

GenSampleResult score_generation(const GenSample& sample, const GenFingerprints& fps) {
  GenSampleResult r;
  r.id = sample.id;
  Molecule ref;
  try {
    ref = parse_smiles(sample.reference);
  } catch (const Error& e) {
    r.error = std::string("invalid reference: ") + e.what();
    return r;
  }
  r.levenshtein = levenshtein(sample.prediction, sample.reference);
  r.bleu = bleu_stats(sample.prediction, sample.reference);
  Molecule pred;
  try {
    pred = parse_smiles(sample.prediction);
  } catch (const Error&) {
    return r;
  }
  r.valid = true;
  r.exact = canonical_smiles(pred) == canonical_smiles(ref);
  r.fts_path = tanimoto(fingerprint(pred, fps.path), fingerprint(ref, fps.path));
  r.fts_key = tanimoto(fingerprint(pred, fps.key), fingerprint(ref, fps.key));
  r.fts_circular = tanimoto(fingerprint(pred, fps.circular), fingerprint(ref, fps.circular));
  return r;
}

MetricReport aggregate_generation(const std::vector<GenSampleResult>& results) {
  MetricReport report;
  report.family = "generation";
  std::size_t n = 0;
  std::size_t exact = 0;
  std::size_t valid = 0;
  double lev = 0.0;
  double fts[3] = {0.0, 0.0, 0.0};
  BleuStats bleu;
  for (const GenSampleResult& r : results) {
    if (r.error) {
      report.errors.emplace_back(r.id, *r.error);
      continue;
    }
    ++n;
    exact += r.exact ? 1 : 0;
    lev += static_cast<double>(r.levenshtein);
    bleu += r.bleu;
    if (r.valid) {
      ++valid;
      fts[0] += *r.fts_path;
      fts[1] += *r.fts_key;
      fts[2] += *r.fts_circular;
    }
  }
  report.sample_count = n;
  auto frac = [&](double x, std::size_t d) -> std::optional<double> {
    if (d == 0) return std::nullopt;
    return x / static_cast<double>(d);
  };
  report.metrics = {
      {"exact", frac(static_cast<double>(exact), n)},
      {"bleu", n ? std::optional<double>(bleu_score(bleu)) : std::nullopt},
      {"levenshtein_mean", frac(lev, n)},
      {"fts_path", frac(fts[0], valid)},
      {"fts_key", frac(fts[1], valid)},
      {"fts_circular", frac(fts[2], valid)},
      {"validity", frac(static_cast<double>(valid), n)},
  };
  return report;
}

MetricReport eval_generation(const std::vector<GenSample>& samples, const GenFingerprints& fps,
                             int workers, std::vector<GenSampleResult>* detail) {
  std::vector<GenSampleResult> results(samples.size());
  parallel_for(samples.size(), workers, [&](std::size_t i) { results[i] = score_generation(samples[i], fps); });
  MetricReport report = aggregate_generation(results);
  if (detail) *detail = std::move(results);
  return report;
}

nlohmann::ordered_json to_json(const GenSampleResult& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  if (r.error) {
    j["error"] = *r.error;
    return j;
  }
  j["valid"] = r.valid;
  j["exact"] = r.exact;
  j["levenshtein"] = r.levenshtein;
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); };
  j["fts_path"] = opt(r.fts_path);
  j["fts_key"] = opt(r.fts_key);
  j["fts_circular"] = opt(r.fts_circular);
  return j;
}

std::optional<double> MetricReport::get(std::string_view name) const {
  for (const auto& [k, v] : metrics) {
    if (k == name) return v;
  }
  throw InvalidArgument("metric '" + std::string(name) + "' not in report");
}

nlohmann::ordered_json MetricReport::to_json() const {
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metrics) m[k] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json();
  nlohmann::ordered_json errs = nlohmann::ordered_json::array();
  for (const auto& [id, msg] : errors) errs.push_back({{"id", id}, {"error", msg}});
  nlohmann::ordered_json j;
  j["family"] = family;
  j["sample_count"] = sample_count;
  j["metrics"] = std::move(m);
  j["errors"] = std::move(errs);
  return j;
}

}  // namespace rxnlab
