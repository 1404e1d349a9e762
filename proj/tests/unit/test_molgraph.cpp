#include <gtest/gtest.h>

#include <random>
#include <set>

#include "molgen.hpp"
#include "rxnlab/errors.hpp"
#include "rxnlab/graph_record.hpp"
#include "rxnlab/smiles.hpp"
#include "test_support.hpp"

using namespace rxnlab;
using rxnlab::testing::fixture;

namespace {

std::string canon(const std::string& s) { return canonical_smiles(parse_smiles(s)); }

std::vector<std::string> corpus() { return rxnlab::testing::read_smiles_file(fixture("molecules.smi")); }

}  // namespace

TEST(Smiles, ParsesOrganicSubset) {
  const Molecule m = parse_smiles("CCO");
  ASSERT_EQ(m.atom_count(), 3u);
  EXPECT_EQ(m.bond_count(), 2u);
  EXPECT_EQ(m.atom(0).implicit_hydrogens, 3);
  EXPECT_EQ(m.atom(1).implicit_hydrogens, 2);
  EXPECT_EQ(m.atom(2).implicit_hydrogens, 1);
  EXPECT_EQ(m.atom(2).atomic_number, 8);
}

TEST(Smiles, BracketAtoms) {
  const Molecule m = parse_smiles("[13CH3][N+](C)(C)C");
  EXPECT_EQ(m.atom(0).isotope, 13);
  EXPECT_EQ(m.atom(0).implicit_hydrogens, 3);
  EXPECT_EQ(m.atom(1).formal_charge, 1);
  EXPECT_EQ(m.atom(1).implicit_hydrogens, 0);
}

TEST(Smiles, AromaticRing) {
  const Molecule m = parse_smiles("c1ccccc1");
  ASSERT_EQ(m.rings().size(), 1u);
  for (int i = 0; i < 6; ++i) {
    EXPECT_TRUE(m.atom(i).is_aromatic);
    EXPECT_EQ(m.atom(i).implicit_hydrogens, 1);
    EXPECT_TRUE(m.atom_in_ring(i));
  }
}

TEST(Smiles, KekuleAndAromaticFormsAgree) {
  EXPECT_EQ(canon("C1=CC=CC=C1"), canon("c1ccccc1"));
  EXPECT_EQ(canon("Cc1ccccc1"), canon("CC1=CC=CC=C1"));
  EXPECT_EQ(canon("S1C=CC=C1"), canon("c1ccsc1"));
}

TEST(Smiles, RingClosureForms) {
  EXPECT_EQ(canon("C%10CCCCC%10"), canon("C1CCCCC1"));
  EXPECT_EQ(canon("C1CC11CC1"), canon("C12(CC1)CC2"));
}

TEST(Smiles, Fragments) {
  const Molecule m = parse_smiles("[Na+].[O-]C(=O)C");
  EXPECT_EQ(m.fragment_count(), 2);
  EXPECT_EQ(canon("[Na+].[O-]C(=O)C"), canon("CC([O-])=O.[Na+]"));
}

TEST(Smiles, ExplicitHydrogenFolded) {
  EXPECT_EQ(canon("[H]OC"), canon("CO"));
}

TEST(Smiles, SyntaxErrors) {
  for (const char* bad : {"", "C(", "C)", "C1CC", "C[", "[C", "C==C", "(C)", "C.", "C%1", "Xx", "C[Zz]"}) {
    EXPECT_THROW(parse_smiles(bad), SyntaxError) << bad;
  }
}

TEST(Smiles, ChemistryErrors) {
  for (const char* bad : {"C(C)(C)(C)(C)C", "c1cccc1", "O=O=O", "FCl(F)F", "C1CC=1=C"}) {
    EXPECT_THROW(parse_smiles(bad), ChemistryError) << bad;
  }
}

TEST(Smiles, ValidateNeverThrows) {
  EXPECT_TRUE(validate("CCO").ok());
  EXPECT_EQ(validate("C1CC").verdict, Verdict::SyntaxError);
  EXPECT_EQ(validate("C(C)(C)(C)(C)C").verdict, Verdict::ChemistryError);
  EXPECT_FALSE(validate("C(C)(C)(C)(C)C").detail.empty());
  EXPECT_EQ(to_string(Verdict::Valid), "valid");
}

TEST(Formula, HillOrder) {
  EXPECT_EQ(molecular_formula(parse_smiles("CCO")), "C2H6O");
  EXPECT_EQ(molecular_formula(parse_smiles("c1ccccc1")), "C6H6");
  EXPECT_EQ(molecular_formula(parse_smiles("O")), "H2O");
  EXPECT_EQ(molecular_formula(parse_smiles("[Na+].[Cl-]")), "ClNa");
  EXPECT_EQ(molecular_formula(parse_smiles("ClC(Cl)Cl")), "CHCl3");
  EXPECT_EQ(molecular_formula(parse_smiles("N")), "H3N");
}

TEST(Canonical, RanksArePermutation) {
  for (const std::string& s : corpus()) {
    const Molecule m = parse_smiles(s);
    std::vector<int> r = canonical_ranks(m);
    std::sort(r.begin(), r.end());
    for (std::size_t i = 0; i < r.size(); ++i) ASSERT_EQ(r[i], static_cast<int>(i)) << s;
  }
}

TEST(Canonical, InvariantUnderRenumbering) {
  std::mt19937_64 rng(7);
  for (const std::string& s : corpus()) {
    const Molecule m = parse_smiles(s);
    const std::string c = canonical_smiles(m);
    for (int k = 0; k < 10; ++k) {
      ASSERT_EQ(canonical_smiles(rxnlab::testing::shuffled(m, rng)), c) << s;
    }
  }
}

TEST(Canonical, InvariantUnderRewriting) {
  std::mt19937_64 rng(11);
  for (const std::string& s : corpus()) {
    const Molecule m = parse_smiles(s);
    const std::string c = canonical_smiles(m);
    for (int k = 0; k < 5; ++k) {
      const std::string rewritten = rxnlab::testing::random_smiles(m, rng);
      ASSERT_EQ(canon(rewritten), c) << s << " as " << rewritten;
    }
  }
}

TEST(Canonical, IdempotentAndRoundTrip) {
  for (const std::string& s : corpus()) {
    const std::string c = canon(s);
    ASSERT_EQ(canon(c), c) << s;
  }
}

TEST(Canonical, GeneratedMolecules) {
  rxnlab::testing::MoleculeGenerator gen(3);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const std::string s = gen.next_smiles();
    const Molecule m = parse_smiles(s);
    const std::string c = canonical_smiles(m);
    EXPECT_EQ(canon(c), c) << s;
    EXPECT_EQ(canonical_smiles(rxnlab::testing::shuffled(m, rng)), c) << s;
  }
}

TEST(Canonical, DistinguishesIsomers) {
  std::set<std::string> seen;
  for (const char* s : {"CCCC", "CC(C)C", "CCO", "COC", "Cc1ccccc1C", "Cc1cccc(C)c1", "Cc1ccc(C)cc1",
                        "C1CC1C", "C1CCC1", "CC=CC", "C=CCC"}) {
    EXPECT_TRUE(seen.insert(canon(s)).second) << s;
  }
}

TEST(Canonical, SymmetricMolecules) {
  // highly symmetric graphs exercise tie breaking
  for (const char* s : {"C12C3C4C1C5C2C3C45", "C1CC2CCC1CC2", "c1cc2ccc3cccc4ccc(c1)c2c34",
                        "C(C)(C)(C)C", "C1CCCCCCCCCCC1"}) {
    const Molecule m = parse_smiles(s);
    std::mt19937_64 rng(1);
    const std::string c = canonical_smiles(m);
    for (int k = 0; k < 20; ++k) EXPECT_EQ(canonical_smiles(rxnlab::testing::shuffled(m, rng)), c);
  }
}

TEST(Canonical, ChiralityCarriedVerbatim) {
  const std::string c = canon("N[C@@H](C)C(=O)O");
  EXPECT_NE(c.find('@'), std::string::npos);
}

TEST(Molecule, RejectsInvalidGraph) {
  std::vector<Atom> atoms(2);
  EXPECT_THROW(Molecule(atoms, {{0, 0}}), ChemistryError);
  EXPECT_THROW(Molecule(atoms, {{0, 1}, {1, 0}}), ChemistryError);
  EXPECT_THROW(Molecule(atoms, {{0, 5}}), InvalidArgument);
}

TEST(Molecule, SplitFragmentsAndSubmolecule) {
  const Molecule m = parse_smiles("CCO.c1ccccc1");
  const auto frags = split_fragments(m);
  ASSERT_EQ(frags.size(), 2u);
  EXPECT_EQ(canonical_smiles(frags[0]), canon("CCO"));
  EXPECT_EQ(canonical_smiles(frags[1]), canon("c1ccccc1"));

  const Molecule e = parse_smiles("CCO");
  const Molecule sub = induced_submolecule(e, {true, true, false});
  EXPECT_EQ(canonical_smiles(sub), canon("CC"));
}

TEST(Molecule, RingPerception) {
  const Molecule m = parse_smiles("c1ccc2ccccc2c1");
  EXPECT_EQ(m.rings().size(), 2u);
  int fused = 0;
  for (int i = 0; i < static_cast<int>(m.atom_count()); ++i) fused += m.ring_count(i) == 2;
  EXPECT_EQ(fused, 2);
  const Molecule cubane = parse_smiles("C12C3C4C1C5C2C3C45");
  EXPECT_EQ(cubane.rings().size(), 5u);
}

// graph records carry neither stereo nor isotopes
static Molecule flattened(const Molecule& m) {
  std::vector<Atom> atoms(m.atoms().begin(), m.atoms().end());
  for (Atom& a : atoms) {
    a.chirality = Chirality::None;
    a.isotope.reset();
  }
  std::vector<Bond> bonds(m.bonds().begin(), m.bonds().end());
  for (Bond& b : bonds) b.stereo = BondStereo::None;
  return Molecule(std::move(atoms), std::move(bonds));
}

TEST(GraphRecord, DeterministicAndRoundTrip) {
  std::mt19937_64 rng(9);
  for (const std::string& s : corpus()) {
    const Molecule m = parse_smiles(s);
    const GraphRecord g = to_graph_record(m);
    EXPECT_EQ(to_graph_record(rxnlab::testing::shuffled(m, rng)), g) << s;
    const std::string text = graph_record_json(g);
    EXPECT_EQ(parse_graph_record_json(text), g);
    EXPECT_EQ(canonical_smiles(from_graph_record(g)), canonical_smiles(flattened(m))) << s;
    for (const GraphEdge& e : g.edges) EXPECT_LT(e.i, e.j);
  }
}

TEST(GraphRecord, JsonShape) {
  EXPECT_EQ(graph_record_json(to_graph_record(parse_smiles("C"))),
            R"({"nodes":[[6,0,4,false,0]],"edges":[]})");
  const GraphRecord g = to_graph_record(parse_smiles("C=O"));
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].order_code, 2);
}

TEST(GraphRecord, MalformedInput) {
  EXPECT_THROW(parse_graph_record_json(R"({"nodes":[[6,0]],"edges":[]})"), SchemaError);
  EXPECT_THROW(parse_graph_record_json(R"({"nodes":[[6,0,4,false,0]],"edges":[[0,3,1]]})"), SchemaError);
  EXPECT_THROW(parse_graph_record_json("not json"), SchemaError);
  // five bonds on one carbon
  EXPECT_THROW(from_graph_record(parse_graph_record_json(
                   R"({"nodes":[[6,0,0,false,5],[9,0,0,false,1],[9,0,0,false,1],[9,0,0,false,1],[9,0,0,false,1],[9,0,0,false,1]],)"
                   R"("edges":[[0,1,1],[0,2,1],[0,3,1],[0,4,1],[0,5,1]]})")),
               ChemistryError);
}
