#include <gtest/gtest.h>

#include <random>

#include "molgen.hpp"
#include "rxnlab/errors.hpp"
#include "rxnlab/reaction.hpp"
#include "rxnlab/smiles.hpp"

using namespace rxnlab;
using nlohmann::json;

TEST(Reaction, ParsesRoles) {
  const Reaction a = parse_reaction("CCO.CC(=O)O>>CC(=O)OCC");
  EXPECT_EQ(a.reactants.size(), 2u);
  EXPECT_EQ(a.reagents.size(), 0u);
  EXPECT_EQ(a.products.size(), 1u);
  const Reaction b = parse_reaction("CCO>[Na+].[Cl-]>CCN");
  EXPECT_EQ(b.reactants.size(), 1u);
  EXPECT_EQ(b.reagents.size(), 2u);
  EXPECT_EQ(b.products.size(), 1u);
}

TEST(Reaction, Errors) {
  EXPECT_THROW(parse_reaction("CCO>>"), SyntaxError);
  EXPECT_THROW(parse_reaction("CCO"), SyntaxError);
  EXPECT_THROW(parse_reaction("CCO>>C>C"), SyntaxError);
  try {
    parse_reaction("CCO>>CC(");
    FAIL();
  } catch (const ReactionFragmentError& e) {
    EXPECT_EQ(e.role(), Role::Product);
    EXPECT_EQ(e.index(), 0u);
  }
  try {
    parse_reaction("CCO.C(C)(C)(C)(C)C>>CC");
    FAIL();
  } catch (const ReactionFragmentError& e) {
    EXPECT_EQ(e.role(), Role::Reactant);
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(ReactionKey, OrderAndSpellingInvariant) {
  EXPECT_EQ(reaction_key(parse_reaction("OCC.CC(=O)O>>CC(=O)OCC")),
            reaction_key(parse_reaction("CC(=O)O.CCO>>CC(=O)OCC")));
  EXPECT_NE(reaction_key(parse_reaction("CCO.CC(=O)O>>CC(=O)OCC")),
            reaction_key(parse_reaction("CCO.CC(=O)O>>CC(=O)OCCC")));
  EXPECT_NE(reaction_key(parse_reaction("CCO.CC(=O)O>>CC(=O)OCC")),
            reaction_key(parse_reaction("CCO>CC(=O)O>CC(=O)OCC")));
  EXPECT_EQ(reaction_key(parse_reaction("CCO.CC(=O)O>>CC(=O)OCC"), true),
            reaction_key(parse_reaction("CCO>CC(=O)O>CC(=O)OCC"), true));
}

TEST(ReactionKey, RandomRewrites) {
  rxnlab::testing::MoleculeGenerator gen(31);
  std::mt19937_64& rng = gen.rng();
  for (int i = 0; i < 100; ++i) {
    std::vector<Molecule> r = gen.molecules(2), g = gen.molecules(1), p = gen.molecules(1);
    auto side = [&](std::vector<Molecule> mols, bool rewrite) {
      if (rewrite) std::shuffle(mols.begin(), mols.end(), rng);
      std::string out;
      for (const Molecule& m : mols) {
        if (!out.empty()) out += '.';
        out += rewrite ? rxnlab::testing::random_smiles(m, rng) : canonical_smiles(m);
      }
      return out;
    };
    const std::string plain = side(r, false) + ">" + side(g, false) + ">" + side(p, false);
    const std::string rewritten = side(r, true) + ">" + side(g, true) + ">" + side(p, true);
    const std::string key = reaction_key(parse_reaction(plain));
    EXPECT_EQ(reaction_key(parse_reaction(rewritten)), key) << rewritten;
    EXPECT_EQ(reaction_key(parse_reaction(key)), key);
  }
}

TEST(ReactionKey, Format) {
  EXPECT_EQ(reaction_key(parse_reaction("OCC>>C=C")), "CCO>>C=C");
  EXPECT_EQ(role_smiles(parse_reaction("O.C>>N").reactants), "C.O");
}

TEST(Principal, LargestProduct) {
  const Reaction r = parse_reaction("CC>>O.c1ccccc1CC.CCCCCCC");
  EXPECT_EQ(canonical_smiles(principal_molecule(r)), canonical_smiles(parse_smiles("CCc1ccccc1")));
  const Reaction tie = parse_reaction("C>>CCO.CCN");
  EXPECT_EQ(canonical_smiles(principal_molecule(tie)), "CCN");
}

TEST(Yield, Normalization) {
  EXPECT_EQ(parse_yield(json{{"yield", 0.85}}), 0.85);
  EXPECT_EQ(parse_yield(json{{"yield", "85%"}}), 0.85);
  EXPECT_EQ(parse_yield(json{{"yield_percent", 50}}), 0.5);
  EXPECT_EQ(parse_yield(json{{"yield", "0.25"}}), 0.25);
  EXPECT_FALSE(parse_yield(json{{"id", 1}}).has_value());
  EXPECT_THROW(parse_yield(json{{"yield", 85}}), SchemaError);
  EXPECT_THROW(parse_yield(json{{"yield", -0.1}}), SchemaError);
  EXPECT_THROW(parse_yield(json{{"yield", "120%"}}), SchemaError);
  EXPECT_THROW(parse_yield(json{{"yield", "abc"}}), SchemaError);
}

TEST(ReactionRecord, Fields) {
  const json j = {{"id", 7}, {"rxn", "CCO>>CC=O"}, {"solvent", {"O"}}, {"yield", "40%"}, {"class", 3}};
  const ReactionRecord r = parse_reaction_record(j);
  EXPECT_EQ(r.id, "7");
  EXPECT_EQ(r.reaction.conditions.at("solvent").size(), 1u);
  EXPECT_DOUBLE_EQ(*r.reaction.yield_fraction, 0.4);
  EXPECT_EQ(r.reaction.reaction_class, "3");
  EXPECT_THROW(parse_reaction_record(json{{"id", "x"}}), SchemaError);
  EXPECT_THROW(parse_reaction_record(json{{"id", "x"}, {"rxn", 5}}), SchemaError);
  EXPECT_EQ(record_id(json{{"id", "abc"}}), "abc");
}
