#include "sepshort/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <numeric>

#include "sepshort/sssp.hpp"

namespace sepshort {

namespace {

std::int64_t to_int(std::string_view s, std::string_view what) {
  std::int64_t v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw GenerationError("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::pair<Weight, Weight> parse_range(std::string_view s) {
  const auto dots = s.find("..");
  if (dots == std::string_view::npos) throw GenerationError("expected LO..HI");
  const Weight lo = to_int(s.substr(0, dots), "range");
  const Weight hi = to_int(s.substr(dots + 2), "range");
  if (lo > hi) throw GenerationError("empty range");
  return {lo, hi};
}

std::pair<std::size_t, std::size_t> parse_dims(std::string_view s) {
  const auto x = s.find('x');
  if (x == std::string_view::npos) throw GenerationError("expected AxB");
  const auto a = to_int(s.substr(0, x), "dimension");
  const auto b = to_int(s.substr(x + 1), "dimension");
  if (a < 1 || b < 0) throw GenerationError("dimensions must be positive");
  return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
}

struct Arc {
  Vertex u;
  Vertex v;
};

DiGraph apply_rule(std::size_t n, const std::vector<Arc>& arcs, const WeightRule& rule,
                   std::mt19937_64& rng) {
  std::vector<Weight> pot(n, 0);
  if (rule.kind == WeightRule::Kind::kPotential) {
    std::uniform_int_distribution<Weight> pd(0, rule.potential);
    for (auto& p : pot) p = pd(rng);
  }
  std::uniform_int_distribution<Weight> wd(rule.lo, rule.hi);
  std::vector<Edge> edges;
  edges.reserve(arcs.size());
  for (const Arc& a : arcs) {
    Weight len = rule.kind == WeightRule::Kind::kConst ? rule.lo : wd(rng);
    if (rule.kind == WeightRule::Kind::kPotential) len += pot[a.u] - pot[a.v];
    edges.push_back({a.u, a.v, len});
  }
  DiGraph g(n, std::move(edges));
  if (rule.require_no_negative_cycle && g.neg_magnitude() > 0) {
    // Virtual source reaching every vertex with a zero arc.
    std::vector<Edge> aug = g.edges();
    for (std::size_t v = 0; v < n; ++v) aug.push_back({static_cast<Vertex>(n), static_cast<Vertex>(v), 0});
    try {
      bellman_ford(DiGraph(n + 1, std::move(aug)), static_cast<Vertex>(n));
    } catch (const NegativeCycle&) {
      throw GenerationError("weight rule produced a negative cycle");
    }
  }
  return g;
}

Vertex grid_id(std::size_t r, std::size_t c, std::size_t cols) {
  return static_cast<Vertex>(r * cols + c);
}

}  // namespace

WeightRule WeightRule::parse(std::string_view text) {
  WeightRule rule;
  if (const auto comma = text.find(','); comma != std::string_view::npos) {
    if (text.substr(comma + 1) != "nnc") throw GenerationError("unknown rule flag");
    rule.require_no_negative_cycle = true;
    text = text.substr(0, comma);
  }
  if (text == "unit") {
    rule.kind = Kind::kConst;
    rule.lo = rule.hi = 1;
  } else if (text.starts_with("const=")) {
    rule.kind = Kind::kConst;
    rule.lo = rule.hi = to_int(text.substr(6), "constant");
  } else if (text.starts_with("uniform=")) {
    rule.kind = Kind::kUniform;
    std::tie(rule.lo, rule.hi) = parse_range(text.substr(8));
  } else if (text.starts_with("negpot=")) {
    rule.kind = Kind::kPotential;
    const auto body = text.substr(7);
    const auto slash = body.find('/');
    if (slash == std::string_view::npos) throw GenerationError("expected negpot=LO..HI/P");
    std::tie(rule.lo, rule.hi) = parse_range(body.substr(0, slash));
    rule.potential = to_int(body.substr(slash + 1), "potential");
    if (rule.lo < 0 || rule.potential < 0) {
      throw GenerationError("negpot needs nonnegative base lengths and potential");
    }
  } else {
    throw GenerationError("unknown weight rule '" + std::string(text) + "'");
  }
  const Weight mag = std::max(std::abs(rule.lo), std::abs(rule.hi)) + rule.potential;
  if (mag > kMaxInputLength) throw GenerationError("lengths exceed 2^31-1");
  return rule;
}

DiGraph gen_grid(std::size_t rows, std::size_t cols, const WeightRule& rule,
                 std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw GenerationError("grid needs rows, cols >= 1");
  std::vector<Arc> arcs;
  arcs.reserve(4 * rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Vertex v = grid_id(r, c, cols);
      if (c + 1 < cols) {
        arcs.push_back({v, grid_id(r, c + 1, cols)});
        arcs.push_back({grid_id(r, c + 1, cols), v});
      }
      if (r + 1 < rows) {
        arcs.push_back({v, grid_id(r + 1, c, cols)});
        arcs.push_back({grid_id(r + 1, c, cols), v});
      }
    }
  }
  std::mt19937_64 rng(seed);
  return apply_rule(rows * cols, arcs, rule, rng);
}

DiGraph gen_random_grid(std::size_t rows, std::size_t cols, const WeightRule& rule,
                        std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw GenerationError("grid needs rows, cols >= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(0.85), diag(0.3), both(0.5), flip(0.5);
  std::vector<Arc> arcs;
  auto add = [&](Vertex a, Vertex b) {
    if (both(rng)) {
      arcs.push_back({a, b});
      arcs.push_back({b, a});
    } else if (flip(rng)) {
      arcs.push_back({b, a});
    } else {
      arcs.push_back({a, b});
    }
  };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Vertex v = grid_id(r, c, cols);
      if (c + 1 < cols && keep(rng)) add(v, grid_id(r, c + 1, cols));
      if (r + 1 < rows && keep(rng)) add(v, grid_id(r + 1, c, cols));
      if (r + 1 < rows && c + 1 < cols && diag(rng)) {
        if (flip(rng)) {
          add(v, grid_id(r + 1, c + 1, cols));
        } else {
          add(grid_id(r, c + 1, cols), grid_id(r + 1, c, cols));
        }
      }
    }
  }
  return apply_rule(rows * cols, arcs, rule, rng);
}

DiGraph gen_sparse_random(std::size_t n, std::size_t m, const WeightRule& rule,
                          std::uint64_t seed) {
  if (n < 1) throw GenerationError("need n >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> vd(0, static_cast<Vertex>(n - 1));
  std::vector<Arc> arcs(m);
  for (auto& a : arcs) a = {vd(rng), vd(rng)};
  return apply_rule(n, arcs, rule, rng);
}

DiGraph generate(std::string_view spec, std::uint64_t seed) {
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 == std::string_view::npos ? 0 : c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
    throw GenerationError("expected KIND:SIZE:RULE");
  }
  const auto kind = spec.substr(0, c1);
  const auto size = spec.substr(c1 + 1, c2 - c1 - 1);
  const auto rule = WeightRule::parse(spec.substr(c2 + 1));
  if (kind == "grid") {
    auto [r, c] = parse_dims(size);
    return gen_grid(r, c, rule, seed);
  }
  if (kind == "rgrid") {
    auto [r, c] = parse_dims(size);
    return gen_random_grid(r, c, rule, seed);
  }
  if (kind == "path") {
    const auto k = to_int(size, "length");
    if (k < 1) throw GenerationError("path needs length >= 1");
    return gen_grid(1, static_cast<std::size_t>(k), rule, seed);
  }
  if (kind == "sprand") {
    auto [n, m] = parse_dims(size);
    return gen_sparse_random(n, m, rule, seed);
  }
  throw GenerationError("unknown generator '" + std::string(kind) + "'");
}

DiGraph plant_negative_cycle(const DiGraph& g, Vertex source, std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  std::mt19937_64 rng(seed);

  auto bfs = [&](Vertex from, std::vector<EdgeId>& via) {
    std::vector<Vertex> order;
    via.assign(n, kNoEdge);
    std::vector<char> seen(n, 0);
    std::deque<Vertex> q{from};
    seen[from] = 1;
    while (!q.empty()) {
      const Vertex u = q.front();
      q.pop_front();
      order.push_back(u);
      for (EdgeId e : g.out_edges(u)) {
        const Vertex v = g.edge(e).head;
        if (!seen[v]) {
          seen[v] = 1;
          via[v] = e;
          q.push_back(v);
        }
      }
    }
    return order;
  };

  std::vector<EdgeId> via;
  const auto reachable = bfs(source, via);
  const Vertex a = reachable[std::uniform_int_distribution<std::size_t>(0, reachable.size() - 1)(rng)];
  const auto from_a = bfs(a, via);
  const std::size_t span = std::min<std::size_t>(from_a.size(), 40);
  const Vertex b = from_a[std::uniform_int_distribution<std::size_t>(0, span - 1)(rng)];
  Weight len = 0;
  for (Vertex v = b; v != a; v = g.edge(via[v]).tail) len += g.edge(via[v]).length;
  std::vector<Edge> edges = g.edges();
  edges.push_back({b, a, -len - 1 - std::uniform_int_distribution<Weight>(0, 5)(rng)});
  return DiGraph(n, std::move(edges));
}

std::uint64_t env_seed(std::uint64_t fallback) {
  if (const char* s = std::getenv("SEPSHORT_SEED")) {
    std::uint64_t v{};
    const std::string_view sv(s);
    auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec == std::errc{} && p == sv.data() + sv.size()) return v;
  }
  return fallback;
}

}  // namespace sepshort
