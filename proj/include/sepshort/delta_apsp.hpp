#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sepshort/graph.hpp"
#include "sepshort/report.hpp"

namespace sepshort {

/// All-pairs distances over a sorted list of vertex labels.
///
/// `pred(i, j)` is the label of the vertex preceding verts[j] on a shortest
/// verts[i] -> verts[j] path of the underlying graph (which may lie outside
/// `verts`), or kNoVertex. `pred` may be empty when not tracked.
struct DistMatrix {
  std::vector<Vertex> verts;
  std::vector<Weight> dist;
  std::vector<Vertex> pred;

  DistMatrix() = default;
  explicit DistMatrix(std::vector<Vertex> labels, bool with_pred = true);

  std::size_t size() const noexcept { return verts.size(); }
  Weight at(std::size_t i, std::size_t j) const { return dist[i * verts.size() + j]; }
  Weight& at(std::size_t i, std::size_t j) { return dist[i * verts.size() + j]; }
  bool has_pred() const noexcept { return !pred.empty(); }

  std::optional<std::size_t> index_of(Vertex label) const;
  /// Distance between two labels; both must be present.
  Weight between(Vertex u, Vertex v) const;

  /// Sub-matrix over `labels` (sorted, each present).
  DistMatrix restrict_to(std::span<const Vertex> labels) const;
};

/// Floyd-Warshall output with the bookkeeping needed to expand entries into
/// edge paths: mid[i*n+j] is the intermediate index, or -1 when the entry is
/// the single edge direct[i*n+j] (or i == j).
struct FloydWarshallResult {
  DistMatrix matrix;
  std::vector<std::int32_t> mid;
  std::vector<EdgeId> direct;
};

/// Cubic APSP over g; vertex i is reported as labels[i] (identity when
/// `labels` is empty). Throws NegativeCycle with a cycle in g's ids.
FloydWarshallResult floyd_warshall(const DiGraph& g, std::span<const Vertex> labels = {});

/// Pieces V_1..V_k with their APSP matrices, pairwise intersecting in `core`.
struct DeltaSystem {
  std::vector<DistMatrix> pieces;
  std::vector<Vertex> core;
};

/// How a merged entry was obtained. The "piece" segments use that piece's
/// own matrix; "merged" segments refer back into the merged matrix.
enum class ViaKind : std::uint8_t {
  kSelf,             // u == v
  kDirect,           // D_piece(u, v)
  kPieceThenMerged,  // D_piece(u, z) + D(z, v)
  kMergedThenPiece,  // D(u, z) + D_piece(z, v)
  kMergedMerged,     // D(u, z) + D(z, v)
};

struct MergeVia {
  std::int32_t mid = -1;  // merged index of z
  std::int16_t piece = -1;
  ViaKind kind = ViaKind::kSelf;
};

struct MergeResult {
  DistMatrix matrix;            // over T u W_1 u ... u W_k, sorted
  std::vector<MergeVia> via;    // same shape as matrix.dist
  std::uint64_t ops = 0;        // inner-loop steps, see merge_op_bound
};

Report validate_delta(const DeltaSystem& ds);

/// APSP of the union of the pieces in four phases: the core clique (min over
/// pieces) solved by Floyd-Warshall, then core -> W_i and W_i -> core via one
/// core intermediate, then W x W via one core intermediate plus the
/// in-piece distance. Throws InvalidDelta on malformed input and
/// NegativeCycle (witness vertex only) when the union has a negative cycle
/// through the merged vertices.
MergeResult merge_apsp_traced(const DeltaSystem& ds);
DistMatrix merge_apsp(const DeltaSystem& ds);

/// n^2 t + n t^2 + t^3 for the given system; merge ops stay within a small
/// constant multiple of it.
double merge_op_bound(const DeltaSystem& ds);

/// The union graph the merge reasons about: vertex i is verts[i], one edge per
/// finite off-diagonal entry of each piece (parallel edges kept).
struct UnionGraph {
  DiGraph graph;
  std::vector<Vertex> verts;
};

UnionGraph union_graph(const DeltaSystem& ds);

/// Tab-separated dump (header row of labels, "inf" for unreachable).
std::string to_tsv(const DistMatrix& m);

}  // namespace sepshort
