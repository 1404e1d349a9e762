#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rxnlab/fingerprint.hpp"
#include "rxnlab/molecule.hpp"
#include "rxnlab/reaction.hpp"

namespace rxnlab {

/// Scaffold key of a molecule without rings.
inline constexpr std::string_view kEmptyScaffold = "\xE2\x88\x85";  // U+2205

/// Ring systems plus linkers: degree-1 non-ring atoms are pruned until none
/// remain, except atoms double-bonded to a ring atom. nullopt when nothing
/// is left (acyclic input).
std::optional<Molecule> scaffold_molecule(const Molecule& mol);

/// Canonical SMILES of scaffold_molecule(), or kEmptyScaffold.
std::string murcko_scaffold(const Molecule& mol);

/// Fingerprint of the scaffold; the empty scaffold has no bits set.
BitFingerprint scaffold_fingerprint(const Molecule& mol, const FingerprintSpec& spec);

/// Max Tanimoto against the reference set; 0.0 for an empty set.
double max_similarity_to_set(const BitFingerprint& query,
                             const std::vector<BitFingerprint>& reference);

struct SplitOptions {
  double low = 0.5;
  double high = 0.6;
  std::size_t n = 1000;
  FingerprintSpec fingerprint = FingerprintSpec::circular();
  bool merge_agents = false;
  int workers = 1;
};

struct SplitSelection {
  std::string id;
  double max_train_similarity = 0.0;
  std::string scaffold;
};

struct SplitReport {
  std::vector<SplitSelection> selected;
  std::size_t candidate_count = 0;
  std::size_t rejected_overlap = 0;
  std::size_t rejected_above_band = 0;
  std::size_t train_scaffold_count = 0;
  double low = 0.5;
  double high = 0.6;
  std::size_t requested_n = 0;
  std::size_t delivered_n = 0;
};

/// Test-set resampling: drop candidates whose reaction key occurs in
/// train, score the rest by max scaffold similarity to the train scaffolds,
/// keep those <= high, sort ascending (ties by id), take the first n.
/// Throws InvalidArgument for an empty pool or n == 0.
SplitReport resample_test_set(const std::vector<ReactionRecord>& candidates,
                              const std::vector<ReactionRecord>& train,
                              const SplitOptions& options);

nlohmann::ordered_json to_json(const SplitReport& report);

struct KeyedRecord {
  std::string id;
  std::string key;
};

struct NamedSplit {
  std::string name;
  std::vector<KeyedRecord> records;
};

struct LeakPair {
  std::string split_a;
  std::string id_a;
  std::string split_b;
  std::string id_b;
  std::string key;
};

struct WithinSplitDuplicate {
  std::string split;
  std::string key;
  std::vector<std::string> ids;
};

struct RecordError {
  std::string split;
  std::size_t line = 0;
  std::string id;
  std::string message;
};

struct LeakReport {
  std::vector<LeakPair> pairs;
  /// ("a", "b") -> number of pairs, for every split pair in input order.
  std::vector<std::pair<std::pair<std::string, std::string>, std::size_t>> counts;
  std::vector<WithinSplitDuplicate> within_split;
  std::vector<RecordError> errors;
};

/// Exact duplicates by key between every pair of splits (a listed before
/// b) plus duplicate keys inside each split.
LeakReport detect_leakage(const std::vector<NamedSplit>& splits);

nlohmann::ordered_json to_json(const LeakReport& report);

}  // namespace rxnlab
