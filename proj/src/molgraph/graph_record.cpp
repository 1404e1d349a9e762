#include "rxnlab/graph_record.hpp"

#include <algorithm>

#include "rxnlab/errors.hpp"
#include "rxnlab/smiles.hpp"

namespace rxnlab {

GraphRecord to_graph_record(const Molecule& mol) {
  const std::vector<int> ranks = canonical_ranks(mol);
  GraphRecord rec;
  rec.nodes.resize(mol.atom_count());
  for (std::size_t i = 0; i < mol.atom_count(); ++i) {
    const Atom& a = mol.atom(static_cast<int>(i));
    rec.nodes[static_cast<std::size_t>(ranks[i])] = {a.atomic_number, a.formal_charge,
                                                     a.implicit_hydrogens, a.is_aromatic,
                                                     mol.degree(static_cast<int>(i))};
  }
  for (const Bond& b : mol.bonds()) {
    const int u = ranks[static_cast<std::size_t>(b.begin)];
    const int v = ranks[static_cast<std::size_t>(b.end)];
    rec.edges.push_back({std::min(u, v), std::max(u, v), bond_code(b.order)});
  }
  std::sort(rec.edges.begin(), rec.edges.end(), [](const GraphEdge& x, const GraphEdge& y) {
    return std::pair(x.i, x.j) < std::pair(y.i, y.j);
  });
  return rec;
}

Molecule from_graph_record(const GraphRecord& record) {
  std::vector<Atom> atoms;
  atoms.reserve(record.nodes.size());
  for (const GraphNode& n : record.nodes) {
    Atom a;
    a.atomic_number = n.atomic_number;
    a.formal_charge = n.formal_charge;
    a.implicit_hydrogens = n.implicit_hydrogens;
    a.is_aromatic = n.aromatic;
    atoms.push_back(a);
  }
  std::vector<int> degree(atoms.size(), 0);
  std::vector<Bond> bonds;
  for (const GraphEdge& e : record.edges) {
    if (e.i < 0 || e.j < 0 || static_cast<std::size_t>(e.i) >= atoms.size() ||
        static_cast<std::size_t>(e.j) >= atoms.size()) {
      throw SchemaError("edge endpoint out of range");
    }
    if (e.order_code < 1 || e.order_code > 4) {
      throw SchemaError("edge order code must be 1..4");
    }
    ++degree[static_cast<std::size_t>(e.i)];
    ++degree[static_cast<std::size_t>(e.j)];
    bonds.push_back({e.i, e.j, static_cast<BondOrder>(e.order_code), BondStereo::None});
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (record.nodes[i].degree != degree[i]) {
      throw SchemaError("node " + std::to_string(i) + " degree does not match its edges");
    }
  }
  return Molecule(std::move(atoms), std::move(bonds));
}

namespace {

template <typename Json>
void read_record(const Json& j, GraphRecord& record) {
  if (!j.is_object() || !j.contains("nodes") || !j.contains("edges") ||
      !j["nodes"].is_array() || !j["edges"].is_array()) {
    throw SchemaError("graph record needs \"nodes\" and \"edges\" arrays");
  }
  record = GraphRecord{};
  for (const auto& n : j["nodes"]) {
    if (!n.is_array() || n.size() != 5 || !n[0].is_number_integer() ||
        !n[1].is_number_integer() || !n[2].is_number_integer() || !n[3].is_boolean() ||
        !n[4].is_number_integer()) {
      throw SchemaError("node must be [atomic_number, charge, hydrogens, aromatic, degree]");
    }
    record.nodes.push_back({n[0].template get<int>(), n[1].template get<int>(), n[2].template get<int>(), n[3].template get<bool>(),
                            n[4].template get<int>()});
  }
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[2].is_number_integer()) {
      throw SchemaError("edge must be [i, j, order_code]");
    }
    record.edges.push_back({e[0].template get<int>(), e[1].template get<int>(), e[2].template get<int>()});
    const GraphEdge& last = record.edges.back();
    const auto n = static_cast<int>(record.nodes.size());
    if (last.i < 0 || last.j < 0 || last.i >= n || last.j >= n) {
      throw SchemaError("edge endpoint out of range");
    }
  }
}

}  // namespace

void from_json(const nlohmann::json& j, GraphRecord& record) { read_record(j, record); }
void from_json(const nlohmann::ordered_json& j, GraphRecord& record) { read_record(j, record); }

std::string graph_record_json(const GraphRecord& record) {
  nlohmann::ordered_json j;
  to_json(j, record);
  return j.dump();
}

GraphRecord parse_graph_record_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  GraphRecord rec;
  from_json(j, rec);
  return rec;
}

}  // namespace rxnlab
