#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sepshort/graph.hpp"

namespace sepshort {

struct PredEntry {
  Vertex vertex = kNoVertex;
  EdgeId edge = kNoEdge;
};

struct SSSPStats {
  std::uint64_t relaxations = 0;
  std::uint64_t rounds = 0;
  std::uint64_t phases = 0;
};

struct SSSPResult {
  Vertex source = kNoVertex;
  std::vector<Weight> dist;
  std::vector<PredEntry> pred;
  SSSPStats stats;
};

enum class Engine { kBellmanFord, kScaling, kDijkstra };

Engine parse_engine(std::string_view name);
std::string_view engine_name(Engine e);

/// Exact single-source distances with arbitrary integer lengths. Throws
/// NegativeCycle, with a verified witness, if a negative cycle is reachable.
SSSPResult bellman_ford(const DiGraph& g, Vertex s);

/// Round-synchronous Bellman-Ford: after k rounds dist(v) is the length of a
/// shortest walk from s to v with at most k edges. Each round scans every
/// edge once; the loop stops early when a round changes nothing.
SSSPResult bellman_ford_bounded(const DiGraph& g, Vertex s, std::size_t max_rounds);

/// Same, starting from several seeded vertices with given initial distances.
/// Seeded vertices keep pred = none unless strictly improved.
SSSPResult bellman_ford_bounded(const DiGraph& g,
                                std::span<const std::pair<Vertex, Weight>> seeds,
                                std::size_t max_rounds);

/// Binary-heap Dijkstra. Throws NegativeEdge on any negative length.
SSSPResult dijkstra(const DiGraph& g, Vertex s);

/// Bit-scaling solver: ceil(log2(K+1)) phases over the scaled lengths
/// ceil(len / 2^i), each restoring nonnegative reduced costs with a
/// label-correcting Dijkstra pass, followed by one Dijkstra on exact reduced
/// costs. Throws NegativeCycle if a negative cycle is reachable from s.
SSSPResult scaling_sssp(const DiGraph& g, Vertex s);

SSSPResult run_engine(Engine e, const DiGraph& g, Vertex s);

/// First tense edge (dist(v) > dist(u) + len with dist(u) finite), or kNoEdge.
EdgeId find_tense_edge(const DiGraph& g, std::span<const Weight> dist);

/// Runs Bellman-Ford from `from` and returns the negative cycle it reports.
/// Throws std::logic_error if none is reachable.
NegativeCycle negative_cycle_from(const DiGraph& g, Vertex from);

/// Edge path source -> v obtained by walking `pred`. Throws Unreachable.
std::vector<EdgeId> extract_path(const DiGraph& g, const SSSPResult& r, Vertex v);

Weight path_length(const DiGraph& g, std::span<const EdgeId> path);

}  // namespace sepshort
