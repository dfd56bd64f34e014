#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sepshort/division.hpp"
#include "sepshort/skeleton.hpp"
#include "sepshort/sssp.hpp"

namespace sepshort {

/// sqrt(11.5) - 3.
double default_gamma();

struct PipelineConfig {
  double gamma = default_gamma();
  std::optional<std::size_t> r_override;
  Strategy division_strategy = Strategy::kBfsLevel;
  Strategy skeleton_strategy = Strategy::kBfsLevel;
  Engine engine = Engine::kScaling;
  double c_sep = 4.0;
  double alpha = 2.0 / 3.0;
  double c_div = 8.0;
  double c_cnt = 16.0;
  double c_aug = 8.0;
  std::size_t hop_a = 2;
  std::size_t hop_b = 2;
  std::size_t base_cap = 32;
  std::size_t exact_cap = 16;
  std::uint64_t seed = 0;

  void validate() const;
  /// Sets one field from its key ("gamma", "r", "engine", "base_cap", ...).
  void set(std::string_view key, std::string_view value);
  /// key=value per line; '#' starts a comment.
  static PipelineConfig parse(std::string_view text);

  DivisionParams division_params(std::size_t r) const;
  SkeletonParams skeleton_params() const;
};

struct ChosenParams {
  double gamma = 0.0;
  std::size_t r = 1;
};

/// r = ceil(n^(3 / (4 + gamma))) clamped to [1, n], unless overridden.
ChosenParams choose_params(std::size_t n, const PipelineConfig& cfg);

/// Union of the boundary cliques, one arc per ordered pair (the cheapest over
/// all regions). Vertex i is verts[i].
struct ReplacedGraph {
  struct ArcRef {
    int region = -1;
    Vertex a = kNoVertex;  // global ids
    Vertex b = kNoVertex;
  };
  DiGraph graph;
  std::vector<Vertex> verts;
  std::vector<ArcRef> arcs;

  Vertex local_of(Vertex global) const;
};

struct StageTimes {
  double divide_ms = 0.0;
  double skeleton_ms = 0.0;
  double replaced_ms = 0.0;  // shortest paths on the replaced graph
  double internal_ms = 0.0;  // hop-bounded passes inside regions
  double total_ms = 0.0;
};

/// Division, skeletons and replaced graph: everything that does not depend
/// on the source beyond the set of vertices forced onto boundaries.
struct Preparation {
  std::size_t r = 1;
  double gamma = 0.0;
  Division division;
  std::vector<SkeletonPair> skeletons;  // indexed by region id
  ReplacedGraph replaced;
  std::vector<int> region_of_internal;  // region id for internal vertices, -1 for boundary
  std::size_t division_builds = 0;
  std::size_t skeleton_builds = 0;
  std::uint64_t merge_ops = 0;
  double divide_ms = 0.0;
  double skeleton_ms = 0.0;
};

std::shared_ptr<const Preparation> prepare(const DiGraph& g, std::span<const Vertex> sources,
                                           const PipelineConfig& cfg);

struct PipelineResult {
  SSSPResult sssp;
  StageTimes times;
  std::shared_ptr<const Preparation> prep;
  /// Replaced-graph arc into each boundary vertex, g_aug arc into each
  /// internal vertex, kNoEdge at the source and unreachable vertices.
  std::vector<EdgeId> via_arc;
};

/// Exact distances from s, or NegativeCycle with a witness in g's ids.
PipelineResult solve_sssp(const DiGraph& g, Vertex s, const PipelineConfig& cfg = {});
/// One shared preparation, then the per-source steps.
std::vector<PipelineResult> solve_multi(const DiGraph& g, std::span<const Vertex> sources,
                                        const PipelineConfig& cfg = {});
/// Per-source steps on an existing preparation whose forced set includes s.
PipelineResult solve_prepared(const DiGraph& g, Vertex s,
                              std::shared_ptr<const Preparation> prep, const PipelineConfig& cfg);

/// Original-edge path source -> v assembled from the recorded arcs, each
/// expanded through the skeletons. Throws Unreachable.
std::vector<EdgeId> extract_path(const DiGraph& g, const PipelineResult& r, Vertex v);

}  // namespace sepshort
