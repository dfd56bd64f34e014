#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sepshort/errors.hpp"
#include "sepshort/generators.hpp"
#include "sepshort/sssp.hpp"

using namespace sepshort;

namespace {

const DiGraph kThree(3, {{0, 1, 2}, {1, 2, -5}, {0, 2, 1}});

Weight cycle_sum(const DiGraph& g, const NegativeCycle& c) {
  Weight s = 0;
  for (EdgeId e : c.edges()) s += g.edge(e).length;
  return s;
}

bool cycle_closes(const DiGraph& g, const NegativeCycle& c) {
  const auto& es = c.edges();
  if (es.empty()) return false;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (g.edge(es[i]).head != g.edge(es[(i + 1) % es.size()]).tail) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("three-vertex example") {
  for (Engine e : {Engine::kBellmanFord, Engine::kScaling}) {
    const SSSPResult r = run_engine(e, kThree, 0);
    CHECK(r.dist == std::vector<Weight>{0, 2, -3});
    const auto path = extract_path(kThree, r, 2);
    CHECK(path == std::vector<EdgeId>{0, 1});
    CHECK(path_length(kThree, path) == -3);
  }
  CHECK_THROWS_AS(dijkstra(kThree, 0), NegativeEdge);
  try {
    dijkstra(kThree, 0);
  } catch (const NegativeEdge& e) {
    CHECK(e.edge() == 1);
  }
}

TEST_CASE("two-cycle of total -1 is a negative cycle") {
  const DiGraph g(2, {{0, 1, 1}, {1, 0, -2}});
  for (Engine e : {Engine::kBellmanFord, Engine::kScaling}) {
    try {
      run_engine(e, g, 0);
      FAIL("expected NegativeCycle");
    } catch (const NegativeCycle& c) {
      CHECK(cycle_sum(g, c) == -1);
      CHECK(cycle_closes(g, c));
    }
  }
}

TEST_CASE("bounded Bellman-Ford") {
  const DiGraph p = generate("path:6:const=1", 1);
  const SSSPResult zero = bellman_ford_bounded(p, 0, 0);
  CHECK(zero.dist[0] == 0);
  for (Vertex v = 1; v < 6; ++v) CHECK(zero.dist[v] == kInf);

  const SSSPResult two = bellman_ford_bounded(p, 0, 2);
  CHECK(two.dist[2] == 2);
  CHECK(two.dist[3] == kInf);
  CHECK(two.stats.relaxations <= 2 * p.num_edges());

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const DiGraph g = generate("sprand:40x120:negpot=0..9/10", seed);
    const SSSPResult full = bellman_ford_bounded(g, 0, g.num_vertices() - 1);
    CHECK(full.dist == bellman_ford(g, 0).dist);
    CHECK(full.stats.relaxations <= (g.num_vertices() - 1) * g.num_edges());
  }
}

TEST_CASE("seeded bounded Bellman-Ford starts from several vertices") {
  const DiGraph p = generate("path:5:const=2", 1);
  const std::pair<Vertex, Weight> seeds[] = {{0, 10}, {3, -1}};
  const SSSPResult r = bellman_ford_bounded(p, seeds, 4);
  CHECK(r.dist == std::vector<Weight>{5, 3, 1, -1, 1});
}

TEST_CASE("dijkstra on a path gives prefix sums and agrees with Bellman-Ford") {
  const DiGraph p = generate("path:10:const=7", 1);
  const SSSPResult r = dijkstra(p, 0);
  for (Vertex v = 0; v < 10; ++v) CHECK(r.dist[v] == 7 * v);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const DiGraph g = generate("sprand:60x200:uniform=0..20", seed);
    CHECK(dijkstra(g, 0).dist == bellman_ford(g, 0).dist);
  }
}

TEST_CASE("scaling engine agrees with Bellman-Ford and leaves no tense edge") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 80;
    const std::size_t m = rng() % (4 * n);
    const std::string rule = trial % 3 == 0 ? "uniform=0..30" : "negpot=0..12/25";
    const DiGraph g = gen_sparse_random(n, m, WeightRule::parse(rule), rng());
    const Vertex s = static_cast<Vertex>(rng() % n);
    const SSSPResult a = scaling_sssp(g, s);
    const auto o = oracle::sssp(g, s);
    REQUIRE(o);
    CHECK(a.dist == *o);
    CHECK(find_tense_edge(g, a.dist) == kNoEdge);
    for (std::size_t v = 0; v < n; ++v) {
      if (a.dist[v] == kInf) continue;
      CHECK(path_length(g, extract_path(g, a, static_cast<Vertex>(v))) == a.dist[v]);
    }
  }
}

TEST_CASE("nonnegative input runs a single phase") {
  const DiGraph g = generate("grid:6x6:uniform=0..9", 2);
  const SSSPResult r = scaling_sssp(g, 0);
  CHECK(r.stats.phases <= 1);
  CHECK(r.dist == dijkstra(g, 0).dist);
}

TEST_CASE("large negative lengths do not overflow") {
  // n = 10^4 and L = 10^3: every distance is at least -nL.
  const DiGraph g = generate("grid:100x100:negpot=0..50/1000", 9);
  CHECK(g.neg_magnitude() <= 1000 + 50);
  const SSSPResult a = scaling_sssp(g, 0);
  const SSSPResult b = bellman_ford(g, 0);
  CHECK(a.dist == b.dist);
  for (Weight d : a.dist) {
    CHECK(d >= -static_cast<Weight>(g.num_vertices()) * g.neg_magnitude());
  }
}

TEST_CASE("unreachable vertices stay at infinity with no predecessor") {
  const DiGraph g(3, {{0, 1, -2}});
  for (Engine e : {Engine::kBellmanFord, Engine::kScaling}) {
    const SSSPResult r = run_engine(e, g, 0);
    CHECK(r.dist[2] == kInf);
    CHECK(r.pred[2].edge == kNoEdge);
    CHECK_THROWS_AS(extract_path(g, r, 2), Unreachable);
  }
}

TEST_CASE("planted negative cycles are found with verified witnesses") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DiGraph g = plant_negative_cycle(generate("rgrid:9x9:negpot=0..9/8", seed), 0, seed);
    for (Engine e : {Engine::kBellmanFord, Engine::kScaling}) {
      try {
        run_engine(e, g, 0);
        FAIL("expected NegativeCycle");
      } catch (const NegativeCycle& c) {
        CHECK(cycle_sum(g, c) < 0);
        CHECK(cycle_closes(g, c));
      }
    }
  }
}

TEST_CASE("engine names round-trip") {
  for (Engine e : {Engine::kBellmanFord, Engine::kScaling, Engine::kDijkstra}) {
    CHECK(parse_engine(engine_name(e)) == e);
  }
  CHECK_THROWS(parse_engine("goldberg"));
}
