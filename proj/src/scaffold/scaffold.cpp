#include "rxnlab/scaffold.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "rxnlab/errors.hpp"
#include "rxnlab/parallel.hpp"
#include "rxnlab/smiles.hpp"

namespace rxnlab {

std::optional<Molecule> scaffold_molecule(const Molecule& mol) {
  const std::size_t n = mol.atom_count();
  std::vector<bool> keep(n, true);
  std::vector<int> degree(n);
  for (std::size_t i = 0; i < n; ++i) degree[i] = mol.degree(static_cast<int>(i));

  auto retained_exocyclic = [&](int a) {
    if (degree[static_cast<std::size_t>(a)] != 1) return false;
    for (const Neighbor& nb : mol.neighbors(a)) {
      if (keep[static_cast<std::size_t>(nb.atom)] && mol.atom_in_ring(nb.atom) &&
          mol.bond(nb.bond).order == BondOrder::Double) {
        return true;
      }
    }
    return false;
  };

  std::vector<int> todo;
  for (std::size_t i = 0; i < n; ++i) {
    if (!mol.atom_in_ring(static_cast<int>(i)) && degree[i] <= 1) todo.push_back(static_cast<int>(i));
  }
  while (!todo.empty()) {
    const int a = todo.back();
    todo.pop_back();
    const auto ua = static_cast<std::size_t>(a);
    if (!keep[ua] || mol.atom_in_ring(a) || degree[ua] > 1 || retained_exocyclic(a)) continue;
    keep[ua] = false;
    for (const Neighbor& nb : mol.neighbors(a)) {
      const auto ub = static_cast<std::size_t>(nb.atom);
      if (!keep[ub]) continue;
      --degree[ub];
      if (!mol.atom_in_ring(nb.atom) && degree[ub] <= 1) todo.push_back(nb.atom);
    }
  }
  if (std::none_of(keep.begin(), keep.end(), [](bool k) { return k; })) return std::nullopt;
  return induced_submolecule(mol, keep);
}

std::string murcko_scaffold(const Molecule& mol) {
  const auto s = scaffold_molecule(mol);
  return s ? canonical_smiles(*s) : std::string(kEmptyScaffold);
}

BitFingerprint scaffold_fingerprint(const Molecule& mol, const FingerprintSpec& spec) {
  const auto s = scaffold_molecule(mol);
  if (!s) {
    const std::size_t width = spec.kind == FingerprintKind::Key
                                  ? (spec.key_table ? spec.key_table->size() : KeyTable::builtin().size())
                                  : spec.width;
    return BitFingerprint(width);
  }
  return fingerprint(*s, spec);
}

double max_similarity_to_set(const BitFingerprint& query,
                             const std::vector<BitFingerprint>& reference) {
  double best = 0.0;
  for (const BitFingerprint& r : reference) best = std::max(best, tanimoto(query, r));
  return best;
}

SplitReport resample_test_set(const std::vector<ReactionRecord>& candidates,
                              const std::vector<ReactionRecord>& train,
                              const SplitOptions& options) {
  if (candidates.empty()) throw InvalidArgument("candidate pool is empty");
  if (options.n == 0) throw InvalidArgument("n must be at least 1");
  if (options.low > options.high) throw InvalidArgument("band low must not exceed high");

  std::vector<std::string> train_keys(train.size());
  std::vector<std::string> train_scaffolds(train.size());
  parallel_for(train.size(), options.workers, [&](std::size_t i) {
    train_keys[i] = reaction_key(train[i].reaction, options.merge_agents);
    train_scaffolds[i] = murcko_scaffold(principal_molecule(train[i].reaction));
  });
  const std::set<std::string> train_key_set(train_keys.begin(), train_keys.end());

  // one fingerprint per distinct train scaffold
  std::map<std::string, std::size_t> first_with_scaffold;
  for (std::size_t i = 0; i < train.size(); ++i) first_with_scaffold.emplace(train_scaffolds[i], i);
  std::vector<const ReactionRecord*> unique_train;
  for (const auto& [scaffold, idx] : first_with_scaffold) unique_train.push_back(&train[idx]);
  std::vector<BitFingerprint> reference(unique_train.size());
  parallel_for(unique_train.size(), options.workers, [&](std::size_t i) {
    reference[i] = scaffold_fingerprint(principal_molecule(unique_train[i]->reaction),
                                        options.fingerprint);
  });

  struct Scored {
    bool overlap = false;
    double similarity = 0.0;
    std::string scaffold;
  };
  std::vector<Scored> scored(candidates.size());
  parallel_for(candidates.size(), options.workers, [&](std::size_t i) {
    const Reaction& rxn = candidates[i].reaction;
    if (train_key_set.count(reaction_key(rxn, options.merge_agents))) {
      scored[i].overlap = true;
      return;
    }
    const Molecule& principal = principal_molecule(rxn);
    scored[i].scaffold = murcko_scaffold(principal);
    scored[i].similarity =
        max_similarity_to_set(scaffold_fingerprint(principal, options.fingerprint), reference);
  });

  SplitReport report;
  report.candidate_count = candidates.size();
  report.low = options.low;
  report.high = options.high;
  report.requested_n = options.n;
  report.train_scaffold_count = reference.size();
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (scored[i].overlap) {
      ++report.rejected_overlap;
    } else if (scored[i].similarity > options.high) {
      ++report.rejected_above_band;
    } else {
      eligible.push_back(i);
    }
  }
  std::sort(eligible.begin(), eligible.end(), [&](std::size_t a, std::size_t b) {
    if (scored[a].similarity != scored[b].similarity) return scored[a].similarity < scored[b].similarity;
    if (candidates[a].id != candidates[b].id) return candidates[a].id < candidates[b].id;
    return a < b;
  });
  if (eligible.size() > options.n) eligible.resize(options.n);
  for (std::size_t i : eligible) {
    report.selected.push_back({candidates[i].id, scored[i].similarity, scored[i].scaffold});
  }
  report.delivered_n = report.selected.size();
  return report;
}

nlohmann::ordered_json to_json(const SplitReport& report) {
  nlohmann::ordered_json selected = nlohmann::ordered_json::array();
  for (const SplitSelection& s : report.selected) {
    selected.push_back(
        {{"id", s.id}, {"max_train_similarity", s.max_train_similarity}, {"scaffold", s.scaffold}});
  }
  nlohmann::ordered_json j;
  j["selected"] = std::move(selected);
  j["rejected_overlap"] = report.rejected_overlap;
  j["rejected_above_band"] = report.rejected_above_band;
  j["candidate_count"] = report.candidate_count;
  j["train_scaffold_count"] = report.train_scaffold_count;
  j["threshold_band"] = {report.low, report.high};
  j["requested_n"] = report.requested_n;
  j["delivered_n"] = report.delivered_n;
  return j;
}

LeakReport detect_leakage(const std::vector<NamedSplit>& splits) {
  LeakReport report;
  std::vector<std::map<std::string, std::vector<std::string>>> by_key(splits.size());
  for (std::size_t s = 0; s < splits.size(); ++s) {
    for (const KeyedRecord& r : splits[s].records) by_key[s][r.key].push_back(r.id);
    for (const auto& [key, ids] : by_key[s]) {
      if (ids.size() > 1) report.within_split.push_back({splits[s].name, key, ids});
    }
  }
  for (std::size_t a = 0; a < splits.size(); ++a) {
    for (std::size_t b = a + 1; b < splits.size(); ++b) {
      std::set<std::pair<std::string, std::string>> seen;
      std::size_t count = 0;
      for (const auto& [key, ids_a] : by_key[a]) {
        const auto hit = by_key[b].find(key);
        if (hit == by_key[b].end()) continue;
        for (const std::string& ia : ids_a) {
          for (const std::string& ib : hit->second) {
            if (!seen.emplace(ia, ib).second) continue;
            report.pairs.push_back({splits[a].name, ia, splits[b].name, ib, key});
            ++count;
          }
        }
      }
      report.counts.push_back({{splits[a].name, splits[b].name}, count});
    }
  }
  return report;
}

nlohmann::ordered_json to_json(const LeakReport& report) {
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (const LeakPair& p : report.pairs) {
    pairs.push_back({{"split_a", p.split_a},
                     {"id_a", p.id_a},
                     {"split_b", p.split_b},
                     {"id_b", p.id_b},
                     {"key", p.key}});
  }
  nlohmann::ordered_json counts = nlohmann::ordered_json::array();
  for (const auto& [names, n] : report.counts) {
    counts.push_back({{"split_a", names.first}, {"split_b", names.second}, {"pairs", n}});
  }
  nlohmann::ordered_json within = nlohmann::ordered_json::array();
  for (const WithinSplitDuplicate& w : report.within_split) {
    within.push_back({{"split", w.split}, {"key", w.key}, {"ids", w.ids}});
  }
  nlohmann::ordered_json errors = nlohmann::ordered_json::array();
  for (const RecordError& e : report.errors) {
    errors.push_back({{"split", e.split}, {"line", e.line}, {"id", e.id}, {"error", e.message}});
  }
  nlohmann::ordered_json j;
  j["pairs"] = std::move(pairs);
  j["counts"] = std::move(counts);
  j["within_split"] = std::move(within);
  j["errors"] = std::move(errors);
  return j;
}

}  // namespace rxnlab
