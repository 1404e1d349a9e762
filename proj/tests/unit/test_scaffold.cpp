#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "molgen.hpp"
#include "rxnlab/errors.hpp"
#include "rxnlab/reaction.hpp"
#include "rxnlab/scaffold.hpp"
#include "rxnlab/smiles.hpp"
#include "test_support.hpp"

using namespace rxnlab;

namespace {

std::string scaffold_of(const std::string& s) { return murcko_scaffold(parse_smiles(s)); }
std::string canon(const std::string& s) { return canonical_smiles(parse_smiles(s)); }

ReactionRecord record(const std::string& id, const std::string& rxn) {
  return {id, rxn, parse_reaction(rxn)};
}

}  // namespace

TEST(Murcko, HandExamples) {
  EXPECT_EQ(scaffold_of("CCO"), kEmptyScaffold);
  EXPECT_EQ(scaffold_of("CCc1ccccc1"), canon("c1ccccc1"));
  EXPECT_EQ(scaffold_of("c1ccccc1Cc1ccccc1"), canon("c1ccccc1Cc1ccccc1"));
  EXPECT_EQ(scaffold_of("CC(=O)Oc1ccccc1C(=O)O"), canon("c1ccccc1"));
  EXPECT_EQ(scaffold_of("O=C1CCCCC1"), canon("O=C1CCCCC1"));
  EXPECT_EQ(scaffold_of("CCN1CCN(CC1)c1ccccc1"), canon("C1CN(CCN1)c1ccccc1"));
  EXPECT_EQ(scaffold_of("c1ccccc1OCCOc1ccncc1C"), canon("c1ccccc1OCCOc1ccncc1"));
  EXPECT_EQ(scaffold_of("CC1=CC(=O)C=CC1=O"), canon("O=C1C=CC(=O)C=C1"));
}

TEST(Murcko, IdempotentAndInvariant) {
  rxnlab::testing::MoleculeGenerator gen(41);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 300; ++i) {
    const Molecule m = parse_smiles(gen.next_smiles());
    const std::string s = murcko_scaffold(m);
    EXPECT_EQ(murcko_scaffold(rxnlab::testing::shuffled(m, rng)), s);
    if (s != kEmptyScaffold) {
      EXPECT_EQ(scaffold_of(s), s);
    }
  }
}

TEST(Murcko, FingerprintOfEmptyScaffold) {
  const BitFingerprint fp = scaffold_fingerprint(parse_smiles("CCO"), FingerprintSpec::circular());
  EXPECT_EQ(fp.width(), 2048u);
  EXPECT_EQ(fp.count(), 0u);
  EXPECT_EQ(scaffold_fingerprint(parse_smiles("CCO"), FingerprintSpec::key()).width(), 166u);
}

TEST(MaxSimilarity, Cases) {
  BitFingerprint q(8), a(8), b(8);
  q.set(1);
  q.set(2);
  for (std::size_t i : {1, 2, 3, 4}) a.set(i);
  b.set(2);
  EXPECT_EQ(max_similarity_to_set(q, {a, b}), 0.5);
  EXPECT_EQ(max_similarity_to_set(q, {}), 0.0);
  EXPECT_EQ(max_similarity_to_set(q, {a, q}), 1.0);
  EXPECT_THROW(max_similarity_to_set(q, {BitFingerprint(16)}), InvalidArgument);
}

TEST(Split, TrainEqualsCandidates) {
  std::vector<ReactionRecord> pool = {record("a", "CCO>>c1ccccc1O"), record("b", "CC>>C1CCCCC1")};
  SplitOptions opt;
  const SplitReport r = resample_test_set(pool, pool, opt);
  EXPECT_EQ(r.delivered_n, 0u);
  EXPECT_EQ(r.rejected_overlap, 2u);
}

TEST(Split, TiesBrokenById) {
  // acyclic train, cyclic candidates: every similarity is 0
  std::vector<ReactionRecord> train = {record("t", "CC>>CCO")};
  std::vector<ReactionRecord> pool = {record("c", "C>>c1ccccc1"), record("a", "C>>C1CC1"),
                                      record("b", "C>>C1CCC1")};
  SplitOptions opt;
  opt.n = 2;
  const SplitReport r = resample_test_set(pool, train, opt);
  ASSERT_EQ(r.delivered_n, 2u);
  EXPECT_EQ(r.selected[0].id, "a");
  EXPECT_EQ(r.selected[1].id, "b");
  EXPECT_EQ(r.selected[0].max_train_similarity, 0.0);
}

TEST(Split, Errors) {
  SplitOptions opt;
  EXPECT_THROW(resample_test_set({}, {}, opt), InvalidArgument);
  opt.n = 0;
  EXPECT_THROW(resample_test_set({record("a", "C>>C1CC1")}, {}, opt), InvalidArgument);
}

TEST(Split, MatchesBruteForce) {
  rxnlab::testing::MoleculeGenerator gen(77);
  std::vector<ReactionRecord> train, pool;
  for (int i = 0; i < 40; ++i) {
    train.push_back(record("t" + std::to_string(i), "CCO>>" + gen.next_cyclic_smiles()));
  }
  for (int i = 0; i < 300; ++i) {
    const std::string id = "c" + std::to_string(1000 + i);
    if (i % 10 == 0) {
      pool.push_back(record(id, train[static_cast<std::size_t>(i / 10)].rxn));
    } else {
      pool.push_back(record(id, "CCO>>" + gen.next_smiles()));
    }
  }
  for (int workers : {1, 3}) {
    SplitOptions opt;
    opt.n = 100;
    opt.workers = workers;
    const SplitReport r = resample_test_set(pool, train, opt);

    std::set<std::string> train_keys;
    for (const auto& t : train) train_keys.insert(reaction_key(t.reaction));
    std::vector<std::pair<double, std::string>> expected;
    std::size_t overlap = 0;
    for (const auto& c : pool) {
      if (train_keys.count(reaction_key(c.reaction))) {
        ++overlap;
        continue;
      }
      const BitFingerprint q = scaffold_fingerprint(principal_molecule(c.reaction), opt.fingerprint);
      double best = 0;
      for (const auto& t : train) {
        best = std::max(best, tanimoto(q, scaffold_fingerprint(principal_molecule(t.reaction), opt.fingerprint)));
      }
      if (best <= opt.high) expected.emplace_back(best, c.id);
    }
    std::sort(expected.begin(), expected.end());
    if (expected.size() > opt.n) expected.resize(opt.n);
    EXPECT_EQ(r.rejected_overlap, overlap);
    ASSERT_EQ(r.selected.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_EQ(r.selected[i].id, expected[i].second);
      EXPECT_EQ(r.selected[i].max_train_similarity, expected[i].first);
    }
  }
}

TEST(Split, ReportJson) {
  std::vector<ReactionRecord> train = {record("t", "CC>>CCO")};
  std::vector<ReactionRecord> pool = {record("a", "C>>C1CC1")};
  const auto j = to_json(resample_test_set(pool, train, SplitOptions{}));
  EXPECT_EQ(j["threshold_band"], nlohmann::ordered_json({0.5, 0.6}));
  EXPECT_EQ(j["requested_n"], 1000);
  EXPECT_EQ(j["delivered_n"], 1);
  EXPECT_EQ(j["selected"][0]["id"], "a");
}

TEST(Leakage, PlantedAndDisjoint) {
  auto key = [](const std::string& rxn) { return reaction_key(parse_reaction(rxn)); };
  NamedSplit train{"train", {{"1", key("CCO.CC(=O)O>>CC(=O)OCC")}, {"2", key("CC>>C=C")}, {"3", key("CN>>C=N")}}};
  NamedSplit test{"test", {{"9", key("CC(=O)O.OCC>>O=C(C)OCC")}, {"8", key("CCC>>C=CC")}}};
  const LeakReport r = detect_leakage({train, test});
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.pairs[0].id_a, "1");
  EXPECT_EQ(r.pairs[0].id_b, "9");
  ASSERT_EQ(r.counts.size(), 1u);
  EXPECT_EQ(r.counts[0].second, 1u);

  NamedSplit other{"other", {{"x", key("CCCC>>C=CCC")}}};
  EXPECT_TRUE(detect_leakage({train, other}).pairs.empty());
}

TEST(Leakage, WithinSplitAndPairsOnce) {
  NamedSplit a{"a", {{"1", "K"}, {"2", "K"}, {"3", "L"}}};
  NamedSplit b{"b", {{"4", "K"}}};
  NamedSplit c{"c", {{"5", "L"}}};
  const LeakReport r = detect_leakage({a, b, c});
  EXPECT_EQ(r.pairs.size(), 3u);
  ASSERT_EQ(r.within_split.size(), 1u);
  EXPECT_EQ(r.within_split[0].ids, (std::vector<std::string>{"1", "2"}));
  ASSERT_EQ(r.counts.size(), 3u);
  EXPECT_EQ(r.counts[0].second, 2u);
  EXPECT_EQ(r.counts[1].second, 1u);
  EXPECT_EQ(r.counts[2].second, 0u);
}
