#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sepshort/graph.hpp"
#include "sepshort/report.hpp"
#include "sepshort/separator.hpp"

namespace sepshort {

/// Edge-induced piece of a division. Local vertex i of `local_graph` is
/// vertices[i]; local edge i is edge_ids[i].
struct Region {
  int id = 0;
  std::vector<EdgeId> edge_ids;   // sorted
  std::vector<Vertex> vertices;   // sorted global ids
  std::vector<Vertex> boundary;   // sorted global ids
  DiGraph local_graph;

  Vertex local_of(Vertex global) const;  // kNoVertex when absent
  bool is_boundary(Vertex global) const;
};

struct DivisionParams {
  std::size_t r = 1;
  double gamma = 0.5;
  double c_div = 8.0;
  double c_cnt = 16.0;
  SeparatorOptions separator;  // budget.e_sep is overwritten with (2 - gamma) / 3

  double e_sep() const { return (2.0 - gamma) / 3.0; }
};

struct Division {
  std::vector<Region> regions;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t r = 1;  // effective target; raised to 2 when the graph has a non-loop edge
  double gamma = 0.5;
  double e_sep = 0.5;
  double c_div = 8.0;
  double c_cnt = 16.0;
  std::vector<Vertex> forced;  // vertices added to a boundary by force_boundary

  double boundary_bound() const;
  double count_bound() const;

  /// Adds v to the boundary of the lowest-id region containing it. Returns
  /// that region's id.
  int force_boundary(Vertex v);
  /// Ids of all regions whose vertex set contains v.
  std::vector<int> regions_of(Vertex v) const;
};

/// Recursive splitting: regions with more than r vertices are split on uniform
/// weights, regions whose boundary exceeds c_div * r^e_sep on
/// boundary-indicator weights. Separator vertices go to both sides, edges to
/// exactly one. BudgetUnmet carries the offending region's vertices.
Division build_division(const DiGraph& g, const DivisionParams& params);

/// Checks edge partition, vertex sets, region size, recomputed boundary
/// membership, boundary size and region count.
Report verify_division(const DiGraph& g, const Division& d);

/// One JSON object per line: a header line with the parameters, then one
/// line per region with id, edges, boundary and vertices.
std::string division_to_jsonl(const Division& d);
/// Rebuilds local graphs from g. Throws ParseError on malformed input.
Division division_from_jsonl(const DiGraph& g, const std::string& text);

}  // namespace sepshort
