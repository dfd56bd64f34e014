#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sepshort/delta_apsp.hpp"
#include "sepshort/division.hpp"
#include "sepshort/separator.hpp"

namespace sepshort {

struct SkeletonParams {
  SeparatorOptions separator;  // budget.e_sep is forced to 1/2
  std::size_t base_cap = 32;
  std::size_t hop_a = 2;
  std::size_t hop_b = 2;
  /// Run validate_delta on every merge and collect failures in the pair.
  bool check_deltas = false;
};

/// Rounds of hop-bounded Bellman-Ford that suffice on an augmentation of the
/// given recursion depth: a * depth + b.
std::size_t hop_budget(std::size_t depth, std::size_t a = 2, std::size_t b = 2);

/// One node of the recursion. All vertex and edge ids are region-local.
struct SkeletonNode {
  std::vector<Vertex> vertices;   // sorted
  std::vector<Vertex> boundary;   // sorted subset of vertices
  std::vector<Vertex> separator;  // X, empty for base nodes
  std::vector<EdgeId> edges;
  std::vector<int> children;      // merge piece i is children[i]
  bool base = true;
  std::size_t depth = 0;

  /// Base: APSP over all vertices. Internal: merged APSP over X u B(node).
  DistMatrix matrix;
  std::vector<std::int32_t> fw_mid;  // base only
  std::vector<EdgeId> fw_direct;     // base only, region-local edge ids
  std::vector<MergeVia> via;         // internal only
};

/// Where an arc of the augmentation came from: a region edge (node == -1,
/// a = region-local edge id) or the entry (a, b) of nodes[node].matrix.
struct ArcOrigin {
  std::int32_t node = -1;
  Vertex a = kNoVertex;
  Vertex b = kNoVertex;
};

struct SkeletonStats {
  std::uint64_t merge_ops = 0;
  std::uint64_t fw_ops = 0;
  std::uint64_t separator_calls = 0;
  std::size_t nodes = 0;
};

struct SkeletonPair {
  int region_id = 0;
  /// In-region distances between boundary vertices, global labels.
  DistMatrix H;
  /// Over region-local vertex ids: region edges plus every finite clique arc
  /// of every recursion node.
  DiGraph g_aug;
  std::vector<ArcOrigin> arc_origin;
  std::size_t depth = 0;
  std::vector<SkeletonNode> nodes;  // nodes[0] is the root
  std::vector<Vertex> local_to_global;
  std::vector<EdgeId> edge_to_global;
  SkeletonStats stats;
  Report delta_report;

  std::size_t hops(const SkeletonParams& p) const { return hop_budget(depth, p.hop_a, p.hop_b); }
  Vertex local_of(Vertex global) const;
};

/// Recursive construction over the region's boundary. Throws NegativeCycle
/// (global ids) for a negative cycle inside the region and BudgetUnmet from
/// the separator.
SkeletonPair build_skeleton(const Region& region, const SkeletonParams& params);

/// Global edge ids of a shortest u -> v walk inside the region (u, v global).
/// Throws Unreachable when v cannot be reached from u in the region.
std::vector<EdgeId> expand_path(const SkeletonPair& sp, Vertex u, Vertex v);
/// Global edge ids realising one arc of g_aug.
std::vector<EdgeId> expand_arc(const SkeletonPair& sp, EdgeId arc);

/// Indented text dump of the recursion tree.
std::string dump_tree(const SkeletonPair& sp);

}  // namespace sepshort
