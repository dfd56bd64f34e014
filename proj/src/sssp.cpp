#include "sepshort/sssp.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>

namespace sepshort {

Engine parse_engine(std::string_view name) {
  if (name == "bf") return Engine::kBellmanFord;
  if (name == "scaling") return Engine::kScaling;
  if (name == "dijkstra") return Engine::kDijkstra;
  throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

std::string_view engine_name(Engine e) {
  switch (e) {
    case Engine::kBellmanFord: return "bf";
    case Engine::kScaling: return "scaling";
    case Engine::kDijkstra: return "dijkstra";
  }
  return "?";
}

namespace {

SSSPResult make_result(const DiGraph& g, Vertex s) {
  if (s < 0 || static_cast<std::size_t>(s) >= g.num_vertices()) {
    throw std::out_of_range("source vertex out of range");
  }
  SSSPResult r;
  r.source = s;
  r.dist.assign(g.num_vertices(), kInf);
  r.pred.assign(g.num_vertices(), PredEntry{});
  r.dist[s] = 0;
  return r;
}

// Looks for a cycle in the predecessor graph. With strict relaxations every
// such cycle is negative.
bool pred_cycle(const DiGraph& g, const std::vector<PredEntry>& pred,
                std::vector<Vertex>& cyc_vertices, std::vector<EdgeId>& cyc_edges) {
  const std::size_t n = pred.size();
  std::vector<std::uint32_t> mark(n, 0);
  std::uint32_t stamp = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (mark[start]) continue;
    ++stamp;
    Vertex v = static_cast<Vertex>(start);
    while (v != kNoVertex && !mark[v]) {
      mark[v] = stamp;
      v = pred[v].vertex;
    }
    if (v == kNoVertex || mark[v] != stamp) continue;
    // v lies on a cycle; collect it in forward order.
    std::vector<EdgeId> rev;
    Vertex x = v;
    do {
      rev.push_back(pred[x].edge);
      x = pred[x].vertex;
    } while (x != v);
    std::reverse(rev.begin(), rev.end());
    Weight total = 0;
    cyc_vertices.clear();
    for (EdgeId e : rev) {
      total += g.edge(e).length;
      cyc_vertices.push_back(g.edge(e).tail);
    }
    if (total < 0) {
      cyc_edges = std::move(rev);
      return true;
    }
  }
  return false;
}

}  // namespace

SSSPResult bellman_ford(const DiGraph& g, Vertex s) {
  SSSPResult r = make_result(g, s);
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> active{s}, next;
  std::vector<char> queued(n, 0);

  std::size_t round = 0;
  while (!active.empty()) {
    ++round;
    next.clear();
    for (Vertex u : active) queued[u] = 0;
    for (Vertex u : active) {
      const Weight du = r.dist[u];
      for (EdgeId e : g.out_edges(u)) {
        ++r.stats.relaxations;
        const Edge& ed = g.edge(e);
        const Weight cand = add(du, ed.length);
        if (cand < r.dist[ed.head]) {
          r.dist[ed.head] = cand;
          r.pred[ed.head] = {u, e};
          if (!queued[ed.head]) {
            queued[ed.head] = 1;
            next.push_back(ed.head);
          }
        }
      }
    }
    active.swap(next);
    if (round >= n && !active.empty()) {
      std::vector<Vertex> cv;
      std::vector<EdgeId> ce;
      if (pred_cycle(g, r.pred, cv, ce)) throw NegativeCycle(std::move(cv), std::move(ce));
      if (round > 3 * n + 3) throw std::logic_error("bellman_ford: cycle not isolated");
    }
  }
  r.stats.rounds = round;
  return r;
}

SSSPResult bellman_ford_bounded(const DiGraph& g,
                                std::span<const std::pair<Vertex, Weight>> seeds,
                                std::size_t max_rounds) {
  SSSPResult r;
  r.dist.assign(g.num_vertices(), kInf);
  r.pred.assign(g.num_vertices(), PredEntry{});
  for (auto [v, d] : seeds) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.num_vertices()) {
      throw std::out_of_range("seed vertex out of range");
    }
    r.dist[v] = std::min(r.dist[v], d);
  }
  if (seeds.size() == 1) r.source = seeds.front().first;

  std::vector<Weight> prev;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    prev = r.dist;
    bool changed = false;
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
      const Edge& e = g.edges()[i];
      const Weight du = prev[e.tail];
      if (du == kInf) continue;
      const Weight cand = add(du, e.length);
      if (cand < r.dist[e.head]) {
        r.dist[e.head] = cand;
        r.pred[e.head] = {e.tail, static_cast<EdgeId>(i)};
        changed = true;
      }
    }
    r.stats.relaxations += g.num_edges();
    ++r.stats.rounds;
    if (!changed) break;
  }
  return r;
}

SSSPResult bellman_ford_bounded(const DiGraph& g, Vertex s, std::size_t max_rounds) {
  if (s < 0 || static_cast<std::size_t>(s) >= g.num_vertices()) {
    throw std::out_of_range("source vertex out of range");
  }
  const std::pair<Vertex, Weight> seed{s, 0};
  return bellman_ford_bounded(g, std::span(&seed, 1), max_rounds);
}

SSSPResult dijkstra(const DiGraph& g, Vertex s) {
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    if (g.edges()[i].length < 0) throw NegativeEdge(static_cast<EdgeId>(i));
  }
  SSSPResult r = make_result(g, s);
  using Item = std::pair<Weight, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0, s});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != r.dist[u]) continue;
    ++r.stats.rounds;
    for (EdgeId e : g.out_edges(u)) {
      ++r.stats.relaxations;
      const Edge& ed = g.edge(e);
      const Weight cand = add(d, ed.length);
      if (cand < r.dist[ed.head]) {
        r.dist[ed.head] = cand;
        r.pred[ed.head] = {u, e};
        heap.push({cand, ed.head});
      }
    }
  }
  r.stats.phases = 1;
  return r;
}

namespace {

// ceil(w / 2^shift) for signed w.
constexpr Weight scaled_length(Weight w, unsigned shift) { return -((-w) >> shift); }

}  // namespace

SSSPResult scaling_sssp(const DiGraph& g, Vertex s) {
  SSSPResult out = make_result(g, s);
  const std::size_t n = g.num_vertices();

  // Restrict to the part reachable from s; unreachable negative cycles are
  // not our concern.
  std::vector<Vertex> local(n, kNoVertex);
  std::vector<Vertex> global;
  {
    std::deque<Vertex> q{s};
    local[s] = 0;
    global.push_back(s);
    while (!q.empty()) {
      const Vertex u = q.front();
      q.pop_front();
      for (EdgeId e : g.out_edges(u)) {
        const Vertex v = g.edge(e).head;
        if (local[v] == kNoVertex) {
          local[v] = static_cast<Vertex>(global.size());
          global.push_back(v);
          q.push_back(v);
        }
      }
    }
  }
  std::vector<Edge> sub_edges;
  std::vector<EdgeId> edge_map;
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges()[i];
    if (local[e.tail] == kNoVertex) continue;
    sub_edges.push_back({local[e.tail], local[e.head], e.length});
    edge_map.push_back(static_cast<EdgeId>(i));
  }
  const DiGraph reach(global.size(), std::move(sub_edges));
  const std::size_t N = reach.num_vertices();

  auto fail_with_cycle = [&]() {
    NegativeCycle c = negative_cycle_from(reach, 0);
    std::vector<Vertex> vs;
    std::vector<EdgeId> es;
    for (Vertex v : c.vertices()) vs.push_back(global[v]);
    for (EdgeId e : c.edges()) es.push_back(edge_map[e]);
    throw NegativeCycle(std::move(vs), std::move(es));
  };

  using Item = std::pair<Weight, Vertex>;
  std::vector<Weight> pot(N, 0);
  const Weight K = reach.neg_magnitude();
  const unsigned phases = std::bit_width(static_cast<std::uint64_t>(K));
  const Weight floor_bound = -static_cast<Weight>(N);

  std::vector<Weight> d(N);
  for (unsigned phase = phases; phase-- > 0;) {
    for (auto& p : pot) p = add(p, p);
    // Reduced costs are >= -1 here; settle the distances from a virtual
    // source attached to every vertex with zero-length arcs.
    std::fill(d.begin(), d.end(), 0);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (std::size_t v = 0; v < N; ++v) heap.push({0, static_cast<Vertex>(v)});
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du != d[u]) continue;
      for (EdgeId e : reach.out_edges(u)) {
        ++out.stats.relaxations;
        const Edge& ed = reach.edge(e);
        const Weight cost = scaled_length(ed.length, phase) + pot[u] - pot[ed.head];
        const Weight cand = du + cost;
        if (cand < d[ed.head]) {
          if (cand < floor_bound) fail_with_cycle();
          d[ed.head] = cand;
          heap.push({cand, ed.head});
        }
      }
    }
    for (std::size_t v = 0; v < N; ++v) pot[v] = add(pot[v], d[v]);
    ++out.stats.phases;
  }

  // Exact lengths now have nonnegative reduced costs.
  std::vector<Weight> red(N, kInf);
  std::vector<PredEntry> pred(N);
  red[0] = 0;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0, 0});
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (du != red[u]) continue;
    ++out.stats.rounds;
    for (EdgeId e : reach.out_edges(u)) {
      ++out.stats.relaxations;
      const Edge& ed = reach.edge(e);
      const Weight cost = ed.length + pot[u] - pot[ed.head];
      if (cost < 0) throw std::logic_error("scaling_sssp: negative reduced cost");
      const Weight cand = du + cost;
      if (cand < red[ed.head]) {
        red[ed.head] = cand;
        pred[ed.head] = {u, e};
        heap.push({cand, ed.head});
      }
    }
  }
  ++out.stats.phases;
  for (std::size_t v = 0; v < N; ++v) {
    if (red[v] == kInf) continue;
    out.dist[global[v]] = add(sub(red[v], pot[0]), pot[v]);
    if (pred[v].vertex != kNoVertex) {
      out.pred[global[v]] = {global[pred[v].vertex], edge_map[pred[v].edge]};
    }
  }
  return out;
}

SSSPResult run_engine(Engine e, const DiGraph& g, Vertex s) {
  switch (e) {
    case Engine::kBellmanFord: return bellman_ford(g, s);
    case Engine::kScaling: return scaling_sssp(g, s);
    case Engine::kDijkstra: return dijkstra(g, s);
  }
  throw std::invalid_argument("unknown engine");
}

EdgeId find_tense_edge(const DiGraph& g, std::span<const Weight> dist) {
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges()[i];
    if (dist[e.tail] == kInf) continue;
    if (dist[e.head] > add(dist[e.tail], e.length)) return static_cast<EdgeId>(i);
  }
  return kNoEdge;
}

NegativeCycle negative_cycle_from(const DiGraph& g, Vertex from) {
  try {
    bellman_ford(g, from);
  } catch (const NegativeCycle& c) {
    return c;
  }
  throw std::logic_error("no negative cycle reachable from witness vertex");
}

std::vector<EdgeId> extract_path(const DiGraph& g, const SSSPResult& r, Vertex v) {
  if (r.dist.at(static_cast<std::size_t>(v)) == kInf) {
    throw Unreachable("vertex " + std::to_string(v) + " is unreachable");
  }
  std::vector<EdgeId> path;
  for (Vertex x = v; x != r.source;) {
    const PredEntry p = r.pred[x];
    if (p.edge == kNoEdge || path.size() > g.num_vertices()) {
      throw std::logic_error("broken predecessor chain");
    }
    path.push_back(p.edge);
    x = p.vertex;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Weight path_length(const DiGraph& g, std::span<const EdgeId> path) {
  Weight total = 0;
  for (EdgeId e : path) total = add(total, g.edge(e).length);
  return total;
}

}  // namespace sepshort
