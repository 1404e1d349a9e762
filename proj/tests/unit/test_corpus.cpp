#include <gtest/gtest.h>

#include <random>

#include "rxnlab/corpus.hpp"
#include "rxnlab/errors.hpp"
#include "rxnlab/graph_record.hpp"
#include "rxnlab/smiles.hpp"

using namespace rxnlab;
using nlohmann::json;

namespace {

json entity(std::size_t start, std::size_t end, const std::string& smiles) {
  return {{"span", {start, end}}, {"smiles", smiles}};
}

InterleaveResult build(const json& j, InterleaveLimits limits = {}) {
  return build_interleaved(parse_procedure(j), limits, DefaultTokenizer{});
}

}  // namespace

TEST(Tokenizer, DefaultCounts) {
  DefaultTokenizer t;
  EXPECT_EQ(t.count(""), 0u);
  EXPECT_EQ(t.count("Add X to Y."), 5u);
  EXPECT_EQ(t.count("stirred (2 h) at 25 °C"), 8u);
  EXPECT_EQ(t.count("  a  b "), 2u);
  WhitespaceTokenizer w;
  EXPECT_EQ(w.count("Add X to Y."), 4u);
  EXPECT_EQ(make_tokenizer("whitespace")->name(), "whitespace");
  EXPECT_THROW(make_tokenizer("bpe"), InvalidArgument);
}

TEST(Interleave, SegmentsInOrder) {
  const auto r = build({{"id", "p1"}, {"text", "Add X to Y."}, {"entities", {entity(4, 5, "CCO"), entity(9, 10, "OCC")}}});
  ASSERT_TRUE(r.record);
  const auto& s = r.record->segments;
  ASSERT_EQ(s.size(), 5u);
  EXPECT_EQ(s[0].kind, Segment::Kind::Text);
  EXPECT_EQ(s[0].value, "Add ");
  EXPECT_EQ(s[1].kind, Segment::Kind::Mol);
  EXPECT_EQ(s[1].value, "X");
  EXPECT_EQ(s[1].smiles, "CCO");
  EXPECT_EQ(s[3].smiles, "CCO");
  EXPECT_EQ(s[1].graph, to_graph_record(parse_smiles("CCO")));
  EXPECT_EQ(s[4].value, ".");
  EXPECT_EQ(r.record->entity_count, 2u);
  EXPECT_EQ(r.record->token_count, 5u);
  EXPECT_EQ(reconstruct_text(*r.record), "Add X to Y.");
}

TEST(Interleave, CodePointSpans) {
  const std::string text = "Le réactif Yé fut ajouté";
  const auto r = build({{"id", "u"}, {"text", text}, {"entities", {entity(11, 13, "C")}}});
  ASSERT_TRUE(r.record);
  EXPECT_EQ(r.record->segments[1].value, "Yé");
  EXPECT_EQ(reconstruct_text(*r.record), text);
}

TEST(Interleave, Rejections) {
  json many = json::array();
  std::string text;
  for (int i = 0; i < 21; ++i) {
    many.push_back(entity(text.size(), text.size() + 1, "C"));
    text += "M ";
  }
  EXPECT_EQ(build({{"id", "a"}, {"text", text}, {"entities", many}}).rejection, Rejection::EntityLimit);
  EXPECT_EQ(build({{"id", "b"}, {"text", "nothing here"}, {"entities", json::array()}}).rejection,
            Rejection::NoEntity);
  EXPECT_EQ(build({{"id", "c"}, {"text", "X y"}, {"entities", {entity(0, 1, "C1CC")}}}).rejection,
            Rejection::ParseFail);
  std::string long_text = "X";
  for (int i = 0; i < 1024; ++i) long_text += " w";
  EXPECT_EQ(build({{"id", "d"}, {"text", long_text}, {"entities", {entity(0, 1, "C")}}}).rejection,
            Rejection::TokenLimit);
  // exactly at the limits is kept
  EXPECT_EQ(build({{"id", "e"}, {"text", long_text}, {"entities", {entity(0, 1, "C")}}}, {20, 1025}).rejection,
            Rejection::None);
  EXPECT_EQ(to_string(Rejection::EntityLimit), "ENTITY_LIMIT");
  EXPECT_EQ(to_string(Rejection::NoEntity), "NO_ENTITY");
}

TEST(Interleave, MalformedInput) {
  const json bad[] = {
      {{"text", "a"}, {"entities", json::array()}},
      {{"id", "x"}, {"entities", json::array()}},
      {{"id", "x"}, {"text", "abc"}, {"entities", {entity(2, 1, "C")}}},
      {{"id", "x"}, {"text", "abc"}, {"entities", {entity(0, 4, "C")}}},
      {{"id", "x"}, {"text", "abc"}, {"entities", {entity(0, 2, "C"), entity(1, 3, "C")}}},
      {{"id", "x"}, {"text", "abc"}, {"entities", {{{"span", {0}}, {"smiles", "C"}}}}},
      {{"id", "x"}, {"text", "\xff\xfe"}, {"entities", json::array()}},
  };
  for (const json& j : bad) EXPECT_THROW(parse_procedure(j), SchemaError) << j.dump();
}

TEST(Interleave, ReconstructionAndMonotonicity) {
  std::mt19937_64 rng(5);
  const char* smiles[] = {"CCO", "c1ccccc1", "CC(=O)O", "N", "O=C=O"};
  std::vector<AnnotatedProcedure> procs;
  for (int i = 0; i < 200; ++i) {
    AnnotatedProcedure p;
    p.id = std::to_string(i);
    const int n = static_cast<int>(rng() % 30);
    for (int k = 0; k < n; ++k) {
      p.text += "stir ";
      const std::size_t start = p.text.size();
      p.text += "cmpd" + std::to_string(k);
      p.entities.push_back({start, p.text.size(), smiles[rng() % 5]});
      p.text += ", then";
    }
    p.text += " done.";
    procs.push_back(std::move(p));
  }
  std::size_t previous = 0;
  for (std::size_t limit : {0u, 5u, 10u, 20u, 40u}) {
    std::size_t kept = 0;
    for (const auto& p : procs) {
      const auto r = build_interleaved(p, {limit, 100000}, DefaultTokenizer{});
      if (!r.record) continue;
      ++kept;
      EXPECT_EQ(reconstruct_text(*r.record), p.text);
    }
    EXPECT_GE(kept, previous);
    previous = kept;
  }
}

TEST(Interleave, RecordJson) {
  const auto r = build({{"id", "p"}, {"text", "X!"}, {"entities", {entity(0, 1, "C")}}});
  const auto j = to_json(*r.record);
  EXPECT_EQ(j.dump(),
            R"({"id":"p","segments":[{"kind":"mol","surface":"X","smiles":"C","graph":{"nodes":[[6,0,4,false,0]],"edges":[]}},)"
            R"({"kind":"text","value":"!"}],"stats":{"entity_count":1,"token_count":2}})");
}

TEST(Caption, DegenerateRecord) {
  const auto r = build_caption_record({{"id", "c1"}, {"smiles", "OCC"}, {"caption", "Ethanol is an alcohol."}}, {},
                                      DefaultTokenizer{});
  ASSERT_TRUE(r.record);
  ASSERT_EQ(r.record->segments.size(), 2u);
  EXPECT_EQ(r.record->segments[0].kind, Segment::Kind::Mol);
  EXPECT_EQ(r.record->segments[0].smiles, "CCO");
  EXPECT_EQ(r.record->segments[1].value, "Ethanol is an alcohol.");
}

TEST(Stats, Counts) {
  CorpusStats empty;
  EXPECT_EQ(empty.total(), 0u);
  EXPECT_EQ(empty.to_json()["kept"], 0);

  CorpusStats s;
  s.add(build({{"id", "1"}, {"text", "X and Y"}, {"entities", {entity(0, 1, "CCO"), entity(6, 7, "OCC")}}}));
  s.add(build({{"id", "2"}, {"text", "X"}, {"entities", {entity(0, 1, "C")}}}));
  s.add(build({{"id", "3"}, {"text", "none"}, {"entities", json::array()}}));
  s.add_malformed();
  EXPECT_EQ(s.total(), 4u);
  EXPECT_EQ(s.kept(), 2u);
  EXPECT_EQ(s.unique_molecules(), 2u);
  EXPECT_EQ(s.rejected(Rejection::NoEntity), 1u);
  EXPECT_EQ(s.rejected(Rejection::Malformed), 1u);
  const auto j = s.to_json();
  EXPECT_EQ(j["rejected"]["NO_ENTITY"], 1);
  EXPECT_EQ(j["molecules_per_sample_histogram"].size(), 2u);
}

TEST(NameConversion, FiveTasks) {
  const auto recs = build_name_conversion(parse_name_entry({{"id", "n1"}, {"smiles", "OCC"}, {"iupac", "ethanol"}}));
  ASSERT_EQ(recs.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(recs[i].task, kNameTasks[i]);
  EXPECT_EQ(recs[0].target, "C2H6O");
  EXPECT_EQ(std::get<std::string>(recs[0].input), "ethanol");
  EXPECT_EQ(recs[1].target, "CCO");
  EXPECT_EQ(recs[2].target, "C2H6O");
  EXPECT_EQ(std::get<GraphRecord>(recs[2].input), to_graph_record(parse_smiles("CCO")));
  EXPECT_EQ(recs[3].target, "ethanol");
  EXPECT_EQ(recs[4].target, "CCO");
}

TEST(NameConversion, WithoutNameAndErrors) {
  const auto recs = build_name_conversion(parse_name_entry({{"smiles", "CCO"}}));
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].task, "graph_to_formula");
  EXPECT_EQ(recs[1].task, "graph_to_smiles");
  EXPECT_NO_THROW(build_name_conversion(parse_name_entry({{"smiles", "CCO"}, {"formula", "C2H6O"}})));
  EXPECT_THROW(build_name_conversion(parse_name_entry({{"smiles", "CCO"}, {"formula", "C2H5O"}})), ChemistryError);
  EXPECT_THROW(build_name_conversion(parse_name_entry({{"smiles", "C1CC"}})), SyntaxError);
  EXPECT_THROW(parse_name_entry({{"iupac", "x"}}), SchemaError);
}

TEST(NameConversion, FormulaParsing) {
  EXPECT_EQ(parse_formula("C2H6O"), (std::map<std::string, int>{{"C", 2}, {"H", 6}, {"O", 1}}));
  EXPECT_EQ(parse_formula("ClNa"), (std::map<std::string, int>{{"Cl", 1}, {"Na", 1}}));
  EXPECT_THROW(parse_formula("c2"), InvalidArgument);
  EXPECT_THROW(parse_formula(""), InvalidArgument);
}
