#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sepshort/errors.hpp"
#include "sepshort/generators.hpp"
#include "sepshort/separator.hpp"

using namespace sepshort;

namespace {

DiGraph complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b) e.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b), 1});
    }
  }
  return DiGraph(n, std::move(e));
}

SeparatorOptions with(Strategy s, double c = 4.0, double e = 0.5) {
  SeparatorOptions o;
  o.strategy = s;
  o.budget.c_sep = c;
  o.budget.e_sep = e;
  return o;
}

}  // namespace

TEST_CASE("path P_9 is split at its middle vertex") {
  const DiGraph p = generate("path:9:unit", 1);
  const auto w = VertexWeighting::uniform(9);
  for (Strategy s : {Strategy::kExact, Strategy::kBfsLevel, Strategy::kLocalSearch}) {
    const Separation sep = separate(p, w, with(s));
    CHECK(sep.separator == std::vector<Vertex>{4});
    CHECK(verify_separation(p, w, sep, 2.0 / 3.0).ok());
  }
}

TEST_CASE("K_6 has no balanced separator of size 1") {
  const DiGraph k6 = complete(6);
  const auto w = VertexWeighting::uniform(6);
  // Independent enumeration: any balanced separation of K_6 needs a side to
  // be empty, so at least 2 vertices sit in the separator.
  CHECK(oracle::min_separator_size(k6, std::vector<double>(6, 1.0), 2.0 / 3.0) > 1);
  const SeparatorOptions tight = with(Strategy::kExact, 1.0, 1e-9);
  CHECK(tight.budget.f_bound(6) == doctest::Approx(1.0));
  try {
    separate(k6, w, tight);
    FAIL("expected BudgetUnmet");
  } catch (const BudgetUnmet& e) {
    CHECK(verify_separation(k6, w, e.best(), 2.0 / 3.0).ok());
    CHECK(e.best().separator.size() > 1);
  }
}

TEST_CASE("5x5 grid has a separator of at most 5 vertices") {
  const DiGraph g = generate("grid:5x5:unit", 1);
  const auto w = VertexWeighting::uniform(25);
  for (Strategy s : {Strategy::kBfsLevel, Strategy::kLocalSearch}) {
    const Separation sep = separate(g, w, with(s));
    CHECK(sep.separator.size() <= 5);
    CHECK(sep.balance_alpha <= 2.0 / 3.0 + 1e-9);
    CHECK(verify_separation(g, w, sep, 2.0 / 3.0).ok());
  }
}

TEST_CASE("verify_separation accepts the degenerate cover and names a crossing edge") {
  const DiGraph g = generate("grid:3x3:unit", 1);
  const auto w = VertexWeighting::uniform(9);
  Separation all;
  for (Vertex v = 0; v < 9; ++v) {
    all.a.push_back(v);
    all.b.push_back(v);
    all.separator.push_back(v);
  }
  CHECK(verify_separation(g, w, all, 2.0 / 3.0).ok());

  Separation bad;
  bad.a = {0, 1, 2, 3};
  bad.b = {4, 5, 6, 7, 8};
  const Report r = verify_separation(g, w, bad, 2.0 / 3.0);
  REQUIRE_FALSE(r.ok());
  CHECK(r.failures.front().find("crossing edge") != std::string::npos);
}

TEST_CASE("exact strategy is minimum-cardinality on small graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    const std::size_t m = rng() % (2 * n + 1);
    const DiGraph g = gen_sparse_random(n, m, WeightRule::parse("unit"), rng());
    std::vector<double> wv(n);
    for (auto& x : wv) x = static_cast<double>(rng() % 3);
    const VertexWeighting w(wv);
    const Separation s = separate(g, w, with(Strategy::kExact, 100.0, 1.0));
    CHECK(verify_separation(g, w, s, 2.0 / 3.0).ok());
    CHECK(s.separator.size() == oracle::min_separator_size(g, wv, 2.0 / 3.0));
  }
  CHECK_THROWS_AS(separate(generate("path:20:unit", 1), VertexWeighting::uniform(20),
                           with(Strategy::kExact)),
                  std::invalid_argument);
}

TEST_CASE("every strategy returns a valid separation on random inputs") {
  const char* specs[] = {"grid:7x9:unit", "rgrid:10x10:unit", "path:40:unit", "sprand:14x20:unit"};
  for (const char* spec : specs) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const DiGraph g = generate(spec, seed);
      const auto w = VertexWeighting::uniform(g.num_vertices());
      for (Strategy s : {Strategy::kBfsLevel, Strategy::kLocalSearch}) {
        SeparatorOptions o = with(s, 100.0, 1.0);
        o.seed = seed;
        const Separation sep = separate(g, w, o);
        CHECK(verify_separation(g, w, sep, 2.0 / 3.0).ok());
      }
    }
  }
}

TEST_CASE("separation is deterministic for a fixed seed") {
  const DiGraph g = generate("rgrid:12x12:unit", 4);
  const auto w = VertexWeighting::uniform(g.num_vertices());
  const Separation a = separate(g, w, with(Strategy::kLocalSearch));
  const Separation b = separate(g, w, with(Strategy::kLocalSearch));
  CHECK(a.separator == b.separator);
  CHECK(a.a == b.a);
}

TEST_CASE("separator options parse from a CLI string") {
  const auto o = SeparatorOptions::parse("strategy=local-search,c=3,e=0.4,alpha=0.7");
  CHECK(o.strategy == Strategy::kLocalSearch);
  CHECK(o.budget.c_sep == 3.0);
  CHECK(o.budget.e_sep == 0.4);
  CHECK(o.budget.alpha == 0.7);
  CHECK_THROWS(SeparatorOptions::parse("strategy=magic"));
  CHECK_THROWS(SeparatorOptions::parse("alpha=1.5"));
  CHECK_THROWS(SeparatorOptions::parse("c"));
}

TEST_CASE("double_balanced_split on a path with its endpoints as boundary") {
  const DiGraph p = generate("path:27:unit", 1);
  std::vector<Vertex> region(27);
  std::iota(region.begin(), region.end(), 0);
  const std::vector<Vertex> boundary{0, 26};
  const ThreeWaySplit t = double_balanced_split(p, region, boundary, with(Strategy::kBfsLevel));
  CHECK(t.separator.size() <= 2);
  CHECK(oracle::three_way_ok(p, region, boundary, t.separator, t.parts, 2.0 / 3.0));
}

TEST_CASE("double_balanced_split with no boundary skips the second phase") {
  const DiGraph g = generate("grid:6x6:unit", 1);
  std::vector<Vertex> region(36);
  std::iota(region.begin(), region.end(), 0);
  const ThreeWaySplit t = double_balanced_split(g, region, {}, with(Strategy::kBfsLevel));
  CHECK(t.parts[2].empty());
  CHECK(oracle::three_way_ok(g, region, {}, t.separator, t.parts, 2.0 / 3.0));
}

TEST_CASE("double_balanced_split on a 6x6 grid with the left column as boundary") {
  const DiGraph g = generate("grid:6x6:unit", 1);
  std::vector<Vertex> region(36);
  std::iota(region.begin(), region.end(), 0);
  std::vector<Vertex> boundary;
  for (Vertex r = 0; r < 6; ++r) boundary.push_back(r * 6);
  const auto opts = with(Strategy::kBfsLevel);
  const ThreeWaySplit t = double_balanced_split(g, region, boundary, opts);
  CHECK(oracle::three_way_ok(g, region, boundary, t.separator, t.parts, 2.0 / 3.0));
  CHECK(static_cast<double>(t.separator.size()) <= 2.0 * opts.budget.f_bound(36));
}

TEST_CASE("double_balanced_split passes the independent checker on random regions") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const DiGraph g = generate(trial % 2 ? "rgrid:8x8:unit" : "grid:5x9:unit", rng());
    std::vector<Vertex> region(g.num_vertices());
    std::iota(region.begin(), region.end(), 0);
    std::vector<Vertex> boundary;
    for (Vertex v : region) {
      if (rng() % 4 == 0) boundary.push_back(v);
    }
    const auto opts = with(Strategy::kLocalSearch, 100.0, 1.0);
    const ThreeWaySplit t = double_balanced_split(g, region, boundary, opts);
    CHECK(oracle::three_way_ok(g, region, boundary, t.separator, t.parts, 2.0 / 3.0));
  }
}
