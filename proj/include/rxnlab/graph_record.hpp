#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "rxnlab/molecule.hpp"

namespace rxnlab {

struct GraphNode {
  int atomic_number = 0;
  int formal_charge = 0;
  int implicit_hydrogens = 0;
  bool aromatic = false;
  int degree = 0;

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  int i = 0;  // i < j, both node positions
  int j = 0;
  int order_code = 1;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Graph serialization with nodes in canonical rank order.
/// Edges are sorted by (i, j).
struct GraphRecord {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;

  friend bool operator==(const GraphRecord&, const GraphRecord&) = default;
};

GraphRecord to_graph_record(const Molecule& mol);

/// Rebuilds a molecule from a record. Throws SchemaError on malformed input
/// and ChemistryError when the graph is not a valid molecule.
Molecule from_graph_record(const GraphRecord& record);

/// Compact JSON: {"nodes":[[6,0,4,false,0]],"edges":[]}
std::string graph_record_json(const GraphRecord& record);
GraphRecord parse_graph_record_json(const std::string& text);

template <typename Json>
void to_json(Json& j, const GraphRecord& record) {
  Json nodes = Json::array();
  for (const GraphNode& n : record.nodes) {
    nodes.push_back({n.atomic_number, n.formal_charge, n.implicit_hydrogens, n.aromatic, n.degree});
  }
  Json edges = Json::array();
  for (const GraphEdge& e : record.edges) edges.push_back({e.i, e.j, e.order_code});
  j = Json::object();
  j["nodes"] = std::move(nodes);
  j["edges"] = std::move(edges);
}

/// Throws SchemaError.
void from_json(const nlohmann::json& j, GraphRecord& record);
void from_json(const nlohmann::ordered_json& j, GraphRecord& record);

}  // namespace rxnlab
