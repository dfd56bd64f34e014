#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sepshort/weight.hpp"

namespace sepshort {

struct Edge {
  Vertex tail;
  Vertex head;
  Weight length;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable directed multigraph with dense vertex ids 0..n-1.
///
/// Parallel edges and self-loops are kept. Both the out- and in-adjacency are
/// stored in CSR form as edge ids, so edge ids stay stable and callers can map
/// results back to the input edge list.
class DiGraph {
 public:
  DiGraph() = default;
  DiGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

  std::span<const EdgeId> out_edges(Vertex v) const {
    return {out_ids_.data() + out_off_[v], out_ids_.data() + out_off_[v + 1]};
  }
  std::span<const EdgeId> in_edges(Vertex v) const {
    return {in_ids_.data() + in_off_[v], in_ids_.data() + in_off_[v + 1]};
  }

  /// Largest |length| over all edges.
  Weight max_abs_length() const noexcept { return max_abs_; }
  /// Magnitude of the most negative length, 0 if none is negative.
  Weight neg_magnitude() const noexcept { return neg_mag_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_off_{0};
  std::vector<EdgeId> out_ids_;
  std::vector<std::size_t> in_off_{0};
  std::vector<EdgeId> in_ids_;
  Weight max_abs_ = 0;
  Weight neg_mag_ = 0;
};

/// Nonnegative vertex weights w(v) and their sum w(G).
class VertexWeighting {
 public:
  VertexWeighting() = default;
  explicit VertexWeighting(std::vector<double> w);

  static VertexWeighting uniform(std::size_t n);
  static VertexWeighting indicator(std::size_t n, std::span<const Vertex> marked);

  double operator[](Vertex v) const { return w_[static_cast<std::size_t>(v)]; }
  double total() const noexcept { return total_; }
  std::size_t size() const noexcept { return w_.size(); }
  const std::vector<double>& values() const noexcept { return w_; }

 private:
  std::vector<double> w_;
  double total_ = 0.0;
};

DiGraph load_dimacs(std::string_view text);
DiGraph load_dimacs_file(const std::string& path);
std::string save_dimacs(const DiGraph& g);

/// Underlying undirected simple graph: one edge (u, v, 0) with u < v per
/// adjacent pair; self-loops dropped, antiparallel/parallel edges collapsed.
DiGraph underlying_undirected(const DiGraph& g);

/// Sorted, duplicate-free neighbour lists of the underlying undirected graph.
struct Adjacency {
  std::vector<std::size_t> offsets;
  std::vector<Vertex> targets;

  std::size_t size() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
  }
};

Adjacency undirected_adjacency(const DiGraph& g);

/// Graph induced by `edge_ids` on the vertex set `vertices` (sorted global
/// ids). Local edge i corresponds to edge_ids[i].
DiGraph edge_subgraph(const DiGraph& g, std::span<const Vertex> vertices,
                      std::span<const EdgeId> edge_ids);

}  // namespace sepshort
