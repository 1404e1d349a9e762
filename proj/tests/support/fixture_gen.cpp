#include "fixture_gen.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "json.hpp"

#include "molgen.hpp"
#include "rxnlab/errors.hpp"
#include "rxnlab/reaction.hpp"
#include "rxnlab/smiles.hpp"

namespace rxnlab::testing {

namespace {

using ojson = nlohmann::ordered_json;

const char* kReagents[] = {"O", "CO", "CCO", "ClCCl", "[Na+].[OH-]", "CC(=O)O", "C1CCOC1", "CN(C)C=O",
                           "O=C([O-])[O-].[K+].[K+]", "CCN(CC)CC"};

std::string pad(std::size_t i) {
  std::string s = std::to_string(i);
  return std::string(s.size() < 6 ? 6 - s.size() : 0, '0') + s;
}

struct RxnParts {
  std::vector<std::string> reactants;
  std::vector<std::string> reagents;
  std::vector<std::string> products;
};

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) {
    if (!out.empty()) out += '.';
    out += s;
  }
  return out;
}

std::string text(const RxnParts& r) {
  return join(r.reactants) + ">" + join(r.reagents) + ">" + join(r.products);
}

RxnParts random_reaction(MoleculeGenerator& gen) {
  RxnParts r;
  const std::size_t nr = 1 + gen.rng()() % 3;
  for (std::size_t k = 0; k < nr; ++k) r.reactants.push_back(gen.next_smiles());
  if (gen.rng()() % 2) r.reagents.push_back(kReagents[gen.rng()() % std::size(kReagents)]);
  r.products.push_back(gen.next_cyclic_smiles());
  return r;
}

// Same reaction: fragments shuffled inside each role and respelled.
std::string disguise(const RxnParts& r, std::mt19937_64& rng) {
  auto side = [&](std::vector<std::string> frags) {
    std::vector<std::string> out;
    for (const std::string& f : frags) {
      for (const Molecule& m : split_fragments(parse_smiles(f))) out.push_back(random_smiles(m, rng));
    }
    std::shuffle(out.begin(), out.end(), rng);
    return join(out);
  };
  return side(r.reactants) + ">" + side(r.reagents) + ">" + side(r.products);
}

std::string key_of(const std::string& rxn) { return reaction_key(parse_reaction(rxn)); }

std::string record(const std::string& id, const std::string& rxn) {
  return ojson{{"id", id}, {"rxn", rxn}}.dump();
}

}  // namespace

SplitPool make_split_pool(std::uint64_t seed, std::size_t train_n, std::size_t candidate_n) {
  MoleculeGenerator gen(seed);
  std::mt19937_64& rng = gen.rng();
  SplitPool pool;
  std::vector<RxnParts> train;
  std::set<std::string> keys;
  while (train.size() < train_n) {
    RxnParts r = random_reaction(gen);
    if (!keys.insert(key_of(text(r))).second) continue;
    pool.train.push_back(record("train-" + pad(train.size()), text(r)));
    train.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < candidate_n; ++i) {
    const std::string id = "cand-" + pad(i);
    const std::size_t roll = rng() % 100;
    if (roll < 5) {
      pool.candidates.push_back(record(id, disguise(train[rng() % train.size()], rng)));
      ++pool.planted_overlap;
    } else if (roll < 15) {
      // new reactants, product on a train scaffold
      RxnParts r = random_reaction(gen);
      r.products = train[rng() % train.size()].products;
      const std::string t = text(r);
      if (keys.count(key_of(t))) {
        --i;
        continue;
      }
      pool.candidates.push_back(record(id, t));
      ++pool.planted_same_scaffold;
    } else {
      std::string t = text(random_reaction(gen));
      if (keys.count(key_of(t))) {
        --i;
        continue;
      }
      pool.candidates.push_back(record(id, t));
    }
  }
  return pool;
}

LeakScenario make_leak_scenario(std::uint64_t seed, std::size_t a_n, std::size_t b_n, std::size_t planted) {
  if (planted > a_n || planted > b_n) throw InvalidArgument("more planted duplicates than records");
  MoleculeGenerator gen(seed);
  std::mt19937_64& rng = gen.rng();
  LeakScenario s;
  s.name_a = "train";
  s.name_b = "test";
  s.planted = planted;
  std::set<std::string> keys;
  auto fresh = [&] {
    for (;;) {
      RxnParts r = random_reaction(gen);
      if (keys.insert(key_of(text(r))).second) return r;
    }
  };
  std::vector<RxnParts> a;
  for (std::size_t i = 0; i < a_n; ++i) {
    a.push_back(fresh());
    s.split_a.push_back(record("a-" + pad(i), text(a.back())));
  }
  std::vector<std::size_t> chosen(a_n);
  for (std::size_t i = 0; i < a_n; ++i) chosen[i] = i;
  std::shuffle(chosen.begin(), chosen.end(), rng);
  chosen.resize(planted);
  std::vector<std::string> b;
  for (std::size_t i = 0; i < planted; ++i) b.push_back(disguise(a[chosen[i]], rng));
  while (b.size() < b_n) {
    if (planted == 0 && b.size() % 3 != 2) {
      RxnParts near = a[rng() % a_n];
      if (b.size() % 3 == 0 && !near.reagents.empty()) {
        near.reactants.push_back(near.reagents.back());
        near.reagents.pop_back();
      } else {
        near.products = {gen.next_cyclic_smiles()};
      }
      if (keys.insert(key_of(text(near))).second) b.push_back(disguise(near, rng));
      continue;
    }
    b.push_back(text(fresh()));
  }
  std::shuffle(b.begin(), b.end(), rng);
  for (std::size_t i = 0; i < b.size(); ++i) s.split_b.push_back(record("b-" + pad(i), b[i]));
  return s;
}

ProcedureStream make_procedures(std::uint64_t seed, std::size_t total, std::size_t over_entities,
                                std::size_t over_tokens, std::size_t no_entity) {
  if (over_entities + over_tokens + no_entity > total) throw InvalidArgument("categories exceed total");
  MoleculeGenerator gen(seed);
  std::mt19937_64& rng = gen.rng();
  static const char* kWords[] = {"the", "mixture", "was", "stirred", "added", "to", "and", "heated",
                                 "filtered", "solution", "réaction", "dried", "washed", "with"};
  std::vector<int> kinds(total, 0);
  std::size_t at = 0;
  for (std::size_t i = 0; i < over_entities; ++i) kinds[at++] = 1;
  for (std::size_t i = 0; i < over_tokens; ++i) kinds[at++] = 2;
  for (std::size_t i = 0; i < no_entity; ++i) kinds[at++] = 3;
  std::shuffle(kinds.begin(), kinds.end(), rng);

  ProcedureStream out;
  out.over_entities = over_entities;
  out.over_tokens = over_tokens;
  out.no_entity = no_entity;
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t entities = 0;
    std::size_t tokens = 0;  // words + entities
    switch (kinds[i]) {
      case 1:
        entities = 21 + rng() % 10;
        tokens = entities + 20 + rng() % 200;
        break;
      case 2:
        entities = 1 + rng() % 20;
        tokens = 1025 + rng() % 300;
        break;
      case 3:
        entities = 0;
        tokens = 5 + rng() % 100;
        break;
      default:
        // boundary values included: exactly 20 entities, exactly 1024 tokens
        entities = i % 17 == 0 ? 20 : 1 + rng() % 20;
        tokens = i % 13 == 0 ? 1024 : entities + rng() % 400;
        break;
    }
    const std::size_t words = tokens - entities;
    // spread the entities between the words
    std::vector<std::size_t> slots(words + 1, 0);
    for (std::size_t e = 0; e < entities; ++e) ++slots[rng() % slots.size()];
    std::string txt;
    std::size_t cp = 0;  // code point offset
    auto append = [&](const std::string& s) {
      for (unsigned char c : s) cp += (c & 0xC0) != 0x80;
      txt += s;
    };
    ojson ents = ojson::array();
    for (std::size_t w = 0; w <= words; ++w) {
      for (std::size_t e = 0; e < slots[w]; ++e) {
        if (!txt.empty()) append(" ");
        const std::string surface = "compound" + std::to_string(ents.size() + 1);
        const std::size_t start = cp;
        append(surface);
        ents.push_back({{"span", {start, cp}}, {"smiles", gen.next_smiles()}});
      }
      if (w < words) {
        if (!txt.empty()) append(" ");
        append(kWords[rng() % std::size(kWords)]);
      }
    }
    out.texts.push_back(txt);
    out.lines.push_back(ojson{{"id", "proc-" + pad(i)}, {"text", txt}, {"entities", ents}}.dump());
  }
  return out;
}

void make_generation_set(std::uint64_t seed, std::size_t n, std::vector<std::string>& pred,
                         std::vector<std::string>& ref) {
  MoleculeGenerator gen(seed);
  std::mt19937_64& rng = gen.rng();
  static const char* kTasks[] = {"forward", "retro", "reagent", "solvent", "catalyst"};
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "gen-" + pad(i);
    const Molecule m = parse_smiles(gen.next_smiles());
    const std::string reference = canonical_smiles(m);
    std::string prediction;
    switch (rng() % 5) {
      case 0: prediction = reference; break;
      case 1: prediction = random_smiles(m, rng); break;
      case 2: prediction = gen.next_smiles(); break;
      case 3: prediction = reference.substr(0, reference.size() / 2) + "("; break;
      default: prediction = reference + "C"; break;
    }
    pred.push_back(ojson{{"id", id}, {"prediction", prediction}}.dump());
    ref.push_back(ojson{{"id", id}, {"reference", reference}, {"task", kTasks[i % 5]}}.dump());
  }
  std::shuffle(pred.begin(), pred.end(), rng);
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (const std::string& l : lines) out << l << '\n';
}

}  // namespace rxnlab::testing
