#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sepshort/errors.hpp"
#include "sepshort/generators.hpp"
#include "sepshort/pipeline.hpp"

using namespace sepshort;

namespace {

void check_against_oracle(const DiGraph& g, Vertex s, const PipelineConfig& cfg) {
  const PipelineResult r = solve_sssp(g, s, cfg);
  const SSSPResult o = bellman_ford(g, s);
  REQUIRE(r.sssp.dist == o.dist);
  CHECK(find_tense_edge(g, r.sssp.dist) == kNoEdge);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (o.dist[v] == kInf) {
      CHECK_THROWS_AS(extract_path(g, r, static_cast<Vertex>(v)), Unreachable);
      continue;
    }
    const auto path = extract_path(g, r, static_cast<Vertex>(v));
    CHECK(oracle::is_walk(g, path, s, static_cast<Vertex>(v)));
    CHECK(path_length(g, path) == o.dist[v]);
    const auto tree = sepshort::extract_path(g, r.sssp, static_cast<Vertex>(v));
    CHECK(path_length(g, tree) == o.dist[v]);
  }
}

}  // namespace

TEST_CASE("default gamma and parameter choice") {
  CHECK(default_gamma() == doctest::Approx(0.3911649915626341).epsilon(1e-15));
  CHECK(default_gamma() < 0.392);
  PipelineConfig cfg;
  CHECK(choose_params(1, cfg).r == 1);
  // ceil(10^(18 / (4 + gamma))) = ceil(12564.348...).
  CHECK(choose_params(1000000, cfg).r == 12565);
  cfg.gamma = 0.5;
  CHECK(cfg.division_params(100).e_sep() == doctest::Approx(0.5));
  cfg.r_override = 5000;
  CHECK(choose_params(100, cfg).r == 100);
}

TEST_CASE("three-vertex example through several regions") {
  const DiGraph g(3, {{0, 1, 2}, {1, 2, -5}, {0, 2, 1}});
  PipelineConfig cfg;
  cfg.r_override = 2;
  const PipelineResult r = solve_sssp(g, 0, cfg);
  CHECK(r.sssp.dist == std::vector<Weight>{0, 2, -3});
  CHECK(r.prep->division.regions.size() >= 2);
  CHECK(extract_path(g, r, 2) == std::vector<EdgeId>{0, 1});
  CHECK(extract_path(g, r, 0).empty());
}

TEST_CASE("r = n collapses to a single region") {
  const DiGraph g = generate("grid:9x9:negpot=0..9/10", 3);
  PipelineConfig cfg;
  cfg.r_override = g.num_vertices();
  const PipelineResult r = solve_sssp(g, 5, cfg);
  CHECK(r.prep->division.regions.size() == 1);
  CHECK(r.sssp.dist == bellman_ford(g, 5).dist);
}

TEST_CASE("pipeline matches Bellman-Ford on small corpora") {
  const char* specs[] = {"grid:12x12:negpot=0..9/15", "rgrid:15x15:negpot=0..9/15",
                         "path:150:negpot=0..9/15", "sprand:200x200:negpot=0..9/15"};
  for (const char* spec : specs) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const DiGraph g = generate(spec, seed);
      for (Engine e : {Engine::kScaling, Engine::kBellmanFord}) {
        PipelineConfig cfg;
        cfg.engine = e;
        cfg.base_cap = 8;
        check_against_oracle(g, static_cast<Vertex>(seed * 7 % g.num_vertices()), cfg);
      }
    }
  }
}

TEST_CASE("nonnegative inputs work with the Dijkstra engine") {
  const DiGraph g = generate("grid:15x15:uniform=0..20", 2);
  PipelineConfig cfg;
  cfg.engine = Engine::kDijkstra;
  check_against_oracle(g, 17, cfg);
}

TEST_CASE("multi-source solving shares one preparation") {
  const DiGraph g = generate("grid:20x20:negpot=0..9/15", 8);
  const std::vector<Vertex> sources{0, 57, 199, 260, 399};
  PipelineConfig cfg;
  const auto all = solve_multi(g, sources, cfg);
  REQUIRE(all.size() == sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    CHECK(all[i].sssp.dist == bellman_ford(g, sources[i]).dist);
    CHECK(all[i].sssp.dist == solve_sssp(g, sources[i], cfg).sssp.dist);
    CHECK(all[i].prep == all[0].prep);
  }
  CHECK(all[0].prep->division_builds == 1);
  CHECK(all[0].prep->skeleton_builds == 1);

  const auto one = solve_multi(g, std::vector<Vertex>{57}, cfg);
  CHECK(one[0].sssp.dist == solve_sssp(g, 57, cfg).sssp.dist);
}

TEST_CASE("planted negative cycles surface as NegativeCycle with a real witness") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const DiGraph g = plant_negative_cycle(generate("grid:14x14:negpot=0..9/10", seed), 3, seed);
    try {
      solve_sssp(g, 3);
      FAIL("expected NegativeCycle");
    } catch (const NegativeCycle& c) {
      REQUIRE_FALSE(c.edges().empty());
      Weight s = 0;
      for (EdgeId e : c.edges()) s += g.edge(e).length;
      CHECK(s < 0);
      const auto& es = c.edges();
      for (std::size_t i = 0; i < es.size(); ++i) {
        CHECK(g.edge(es[i]).head == g.edge(es[(i + 1) % es.size()]).tail);
      }
    }
  }
}

TEST_CASE("unreachable and isolated vertices stay at infinity") {
  const DiGraph g(6, {{0, 1, 4}, {1, 2, -1}, {3, 4, 2}});
  PipelineConfig cfg;
  cfg.r_override = 2;
  const PipelineResult r = solve_sssp(g, 0, cfg);
  CHECK(r.sssp.dist == std::vector<Weight>{0, 4, 3, kInf, kInf, kInf});
  CHECK(r.sssp.pred[5].edge == kNoEdge);
  const PipelineResult iso = solve_sssp(g, 5, cfg);
  CHECK(iso.sssp.dist[5] == 0);
  CHECK(iso.sssp.dist[0] == kInf);
}

TEST_CASE("identical inputs give identical outputs") {
  const DiGraph g = generate("rgrid:18x18:negpot=0..9/15", 6);
  const PipelineResult a = solve_sssp(g, 4);
  const PipelineResult b = solve_sssp(g, 4);
  CHECK(a.sssp.dist == b.sssp.dist);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    CHECK(a.sssp.pred[v].edge == b.sssp.pred[v].edge);
  }
  CHECK(a.via_arc == b.via_arc);
}

TEST_CASE("boundary distances after the replaced-graph stage are exact") {
  const DiGraph g = generate("grid:16x16:negpot=0..9/12", 3);
  const PipelineResult r = solve_sssp(g, 9);
  const SSSPResult o = bellman_ford(g, 9);
  const ReplacedGraph& rg = r.prep->replaced;
  REQUIRE(rg.verts.size() > 1);
  const SSSPResult on_replaced = bellman_ford(rg.graph, rg.local_of(9));
  for (std::size_t i = 0; i < rg.verts.size(); ++i) CHECK(on_replaced.dist[i] == o.dist[rg.verts[i]]);
}

TEST_CASE("configuration files") {
  const PipelineConfig cfg = PipelineConfig::parse(
      "# tuned\ngamma = 0.5\nr=40\nengine=bf\nbase_cap=12\nskeleton_strategy=local-search\n");
  CHECK(cfg.gamma == 0.5);
  CHECK(cfg.r_override == std::size_t{40});
  CHECK(cfg.engine == Engine::kBellmanFord);
  CHECK(cfg.base_cap == 12);
  CHECK(cfg.skeleton_strategy == Strategy::kLocalSearch);
  CHECK_THROWS_AS(PipelineConfig::parse("gamma=0.9\n"), std::invalid_argument);
  CHECK_THROWS_AS(PipelineConfig::parse("colour=blue\n"), ParseError);
  CHECK_THROWS_AS(PipelineConfig::parse("r\n"), ParseError);
}

TEST_CASE("stage times add up to the total") {
  const DiGraph g = generate("grid:40x40:negpot=0..9/15", 1);
  const PipelineResult r = solve_sssp(g, 0);
  const StageTimes& t = r.times;
  const double sum = t.divide_ms + t.skeleton_ms + t.replaced_ms + t.internal_ms;
  CHECK(sum <= t.total_ms * 1.0001);
  CHECK(sum >= 0.9 * t.total_ms);
}
