#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "sepshort/graph.hpp"

namespace sepshort {

/// How edge lengths are drawn.
///
///   unit              every length 1
///   const=W           every length W
///   uniform=LO..HI    independent uniform integers in [LO, HI]
///   negpot=LO..HI/P   uniform base lengths in [LO, HI] (LO >= 0) shifted by
///                     random vertex potentials in [0, P]: len + p(u) - p(v).
///                     Cycle lengths are unchanged, so no negative cycle can
///                     appear while many individual lengths are negative.
///
/// A trailing ",nnc" demands that the result has no negative cycle; the
/// generator checks with Bellman-Ford and throws GenerationError otherwise.
struct WeightRule {
  enum class Kind { kConst, kUniform, kPotential };
  Kind kind = Kind::kConst;
  Weight lo = 1;
  Weight hi = 1;
  Weight potential = 0;
  bool require_no_negative_cycle = false;

  static WeightRule parse(std::string_view text);
};

DiGraph gen_grid(std::size_t rows, std::size_t cols, const WeightRule& rule,
                 std::uint64_t seed);

/// Planar random grid: each grid edge kept with probability 0.85, one
/// diagonal per cell with probability 0.3; each kept undirected edge becomes
/// two arcs with probability 0.5, else a single arc of random direction.
DiGraph gen_random_grid(std::size_t rows, std::size_t cols, const WeightRule& rule,
                        std::uint64_t seed);

/// Uniformly random sparse digraph with n vertices and m arcs.
DiGraph gen_sparse_random(std::size_t n, std::size_t m, const WeightRule& rule,
                          std::uint64_t seed);

/// "grid:RxC:rule", "rgrid:RxC:rule", "path:N:rule" or "sprand:NxM:rule".
DiGraph generate(std::string_view spec, std::uint64_t seed);

/// Adds one arc closing a short path reachable from `source` so that the
/// resulting cycle has negative length. Returns the new graph; the planted
/// arc is the last edge.
DiGraph plant_negative_cycle(const DiGraph& g, Vertex source, std::uint64_t seed);

/// Seed from SEPSHORT_SEED, or `fallback` when unset.
std::uint64_t env_seed(std::uint64_t fallback = 1);

}  // namespace sepshort
