#include <gtest/gtest.h>

#include <random>

#include "molgen.hpp"
#include "rxnlab/errors.hpp"
#include "rxnlab/fingerprint.hpp"
#include "rxnlab/smiles.hpp"
#include "rxnlab/substructure.hpp"
#include "test_support.hpp"

using namespace rxnlab;

namespace {

BitFingerprint bits(std::size_t width, std::initializer_list<std::size_t> on) {
  BitFingerprint fp(width);
  for (std::size_t b : on) fp.set(b);
  return fp;
}

std::vector<FingerprintSpec> all_specs() {
  return {FingerprintSpec::circular(), FingerprintSpec::circular(3, 1024), FingerprintSpec::path(),
          FingerprintSpec::path(1, 5, 1024), FingerprintSpec::key()};
}

}  // namespace

TEST(BitFingerprint, SetTestCount) {
  BitFingerprint fp(100);
  fp.set(0);
  fp.set(99);
  fp.set(64);
  EXPECT_TRUE(fp.test(64));
  EXPECT_FALSE(fp.test(63));
  EXPECT_EQ(fp.count(), 3u);
  EXPECT_EQ(fp.on_bits(), (std::vector<std::size_t>{0, 64, 99}));
  EXPECT_THROW(fp.set(100), InvalidArgument);
}

TEST(BitFingerprint, TextFormat) {
  EXPECT_EQ(bits(16, {0, 9}).to_string(), "16:0102");
  EXPECT_EQ(bits(12, {3}).to_string(), "12:0800");
  for (const auto& fp : {bits(2048, {1, 5, 2047}), bits(166, {0, 165}), bits(8, {})}) {
    EXPECT_EQ(BitFingerprint::from_string(fp.to_string()), fp);
  }
  for (const char* bad : {"", "16", "16:01", "x:0000", "16:zz00", "12:0010"}) {
    EXPECT_THROW(BitFingerprint::from_string(bad), InvalidArgument) << bad;
  }
}

TEST(Tanimoto, HandValues) {
  EXPECT_EQ(tanimoto(bits(8, {1, 2, 3}), bits(8, {2, 3, 4})), 0.5);
  EXPECT_EQ(tanimoto(bits(8, {}), bits(8, {})), 1.0);
  EXPECT_EQ(tanimoto(bits(8, {1}), bits(8, {})), 0.0);
  EXPECT_THROW(tanimoto(bits(8, {}), bits(16, {})), InvalidArgument);
}

TEST(Tanimoto, SymmetricAndBounded) {
  rxnlab::testing::MoleculeGenerator gen(2);
  std::vector<BitFingerprint> fps;
  for (int i = 0; i < 40; ++i) fps.push_back(circular_fingerprint(parse_smiles(gen.next_smiles())));
  for (const auto& a : fps) {
    EXPECT_EQ(tanimoto(a, a), 1.0);
    for (const auto& b : fps) {
      const double t = tanimoto(a, b);
      EXPECT_EQ(t, tanimoto(b, a));
      EXPECT_GE(t, 0.0);
      EXPECT_LE(t, 1.0);
    }
  }
}

TEST(Fingerprint, InvariantUnderRenumbering) {
  std::mt19937_64 rng(3);
  for (const std::string& s : rxnlab::testing::read_smiles_file(rxnlab::testing::fixture("molecules.smi"))) {
    const Molecule m = parse_smiles(s);
    for (const FingerprintSpec& spec : all_specs()) {
      const BitFingerprint fp = fingerprint(m, spec);
      for (int k = 0; k < 5; ++k) {
        ASSERT_EQ(fingerprint(rxnlab::testing::shuffled(m, rng), spec), fp) << s;
      }
    }
  }
}

TEST(Fingerprint, CircularRadiusIsMonotone) {
  rxnlab::testing::MoleculeGenerator gen(12);
  for (int i = 0; i < 100; ++i) {
    const Molecule m = parse_smiles(gen.next_smiles());
    BitFingerprint prev = circular_fingerprint(m, 0);
    for (int r = 1; r <= 3; ++r) {
      const BitFingerprint cur = circular_fingerprint(m, r);
      for (std::size_t b : prev.on_bits()) ASSERT_TRUE(cur.test(b));
      prev = cur;
    }
  }
}

TEST(Fingerprint, PathLengthIsMonotone) {
  rxnlab::testing::MoleculeGenerator gen(13);
  for (int i = 0; i < 100; ++i) {
    const Molecule m = parse_smiles(gen.next_smiles());
    const BitFingerprint shorter = path_fingerprint(m, 1, 4);
    const BitFingerprint longer = path_fingerprint(m, 1, 7);
    for (std::size_t b : shorter.on_bits()) ASSERT_TRUE(longer.test(b));
  }
}

TEST(Fingerprint, KeysFollowMatcher) {
  const KeyTable& table = KeyTable::builtin();
  rxnlab::testing::MoleculeGenerator gen(14);
  for (int i = 0; i < 50; ++i) {
    const Molecule m = parse_smiles(gen.next_smiles());
    const BitFingerprint fp = key_fingerprint(m, table);
    ASSERT_EQ(fp.width(), 166u);
    for (const KeyEntry& k : table.entries()) {
      const bool expected = count_matches(k.pattern, m) >= static_cast<std::size_t>(k.min_count);
      ASSERT_EQ(fp.test(static_cast<std::size_t>(k.index - 1)), expected) << k.smarts;
    }
  }
}

TEST(Fingerprint, WidthAndDistinctness) {
  const Molecule a = parse_smiles("CCO");
  const Molecule b = parse_smiles("c1ccccc1");
  EXPECT_EQ(circular_fingerprint(a, 2, 1024).width(), 1024u);
  EXPECT_NE(circular_fingerprint(a), circular_fingerprint(b));
  EXPECT_NE(path_fingerprint(a), path_fingerprint(b));
  EXPECT_LT(tanimoto(circular_fingerprint(a), circular_fingerprint(b)), 0.5);
  EXPECT_THROW(circular_fingerprint(a, -1), InvalidArgument);
  EXPECT_THROW(circular_fingerprint(a, 2, 0), InvalidArgument);
  EXPECT_THROW(path_fingerprint(a, 3, 2), InvalidArgument);
}

TEST(Fingerprint, KindNames) {
  EXPECT_EQ(parse_fingerprint_kind("circular"), FingerprintKind::Circular);
  EXPECT_EQ(parse_fingerprint_kind("path"), FingerprintKind::Path);
  EXPECT_EQ(parse_fingerprint_kind("key"), FingerprintKind::Key);
  EXPECT_THROW(parse_fingerprint_kind("morgan2"), InvalidArgument);
  EXPECT_EQ(to_string(FingerprintKind::Key), "key");
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a(nullptr, 0), 0xcbf29ce484222325ULL);
  const std::uint8_t a[] = {'a'};
  EXPECT_EQ(fnv1a(a, 1), 0xaf63dc4c8601ec8cULL);
}

TEST(Fingerprint, SmallHandCases) {
  EXPECT_EQ(circular_fingerprint(parse_smiles("C"), 0).count(), 1u);
  EXPECT_LE(circular_fingerprint(parse_smiles("CCO"), 2).count(), 9u);
  EXPECT_EQ(circular_fingerprint(parse_smiles("OCC")), circular_fingerprint(parse_smiles("CCO")));
  EXPECT_EQ(path_fingerprint(parse_smiles("CC")).count(), 1u);
  EXPECT_LE(path_fingerprint(parse_smiles("CCCC")).count(), 3u);
  EXPECT_EQ(path_fingerprint(parse_smiles("C")).count(), 0u);
}

TEST(Fingerprint, KeyHandCases) {
  const KeyTable oxygen = KeyTable::parse("1\t[#8]\t1\n");
  EXPECT_FALSE(key_fingerprint(parse_smiles("c1ccccc1"), oxygen).test(0));
  EXPECT_TRUE(key_fingerprint(parse_smiles("CCO"), oxygen).test(0));
  EXPECT_THROW(KeyTable::parse("# nothing\n"), SchemaError);
}
