#include "sepshort/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <string>

#include "sepshort/errors.hpp"

namespace sepshort {

double default_gamma() { return std::sqrt(11.5) - 3.0; }

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(std::string_view key, std::string_view v) {
  const std::string s(v);
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw std::invalid_argument("bad value '" + s + "' for " + std::string(key));
  }
  return d;
}

std::size_t to_count(std::string_view key, std::string_view v) {
  const double d = to_double(key, v);
  if (d < 0 || d != std::floor(d)) {
    throw std::invalid_argument("expected a nonnegative integer for " + std::string(key));
  }
  return static_cast<std::size_t>(d);
}

}  // namespace

void PipelineConfig::validate() const {
  if (!(gamma > 0.0 && gamma <= 0.5)) throw std::invalid_argument("gamma must be in (0, 1/2]");
  if (r_override && *r_override < 1) throw std::invalid_argument("r must be at least 1");
  if (base_cap < 2) throw std::invalid_argument("base_cap must be at least 2");
  SeparatorBudget{c_sep, 0.5, alpha}.validate();
}

void PipelineConfig::set(std::string_view key, std::string_view value) {
  if (key == "gamma") {
    gamma = to_double(key, value);
  } else if (key == "r") {
    r_override = to_count(key, value);
  } else if (key == "engine") {
    engine = parse_engine(value);
  } else if (key == "division_strategy") {
    division_strategy = parse_strategy(value);
  } else if (key == "skeleton_strategy") {
    skeleton_strategy = parse_strategy(value);
  } else if (key == "c_sep") {
    c_sep = to_double(key, value);
  } else if (key == "alpha") {
    alpha = to_double(key, value);
  } else if (key == "c_div") {
    c_div = to_double(key, value);
  } else if (key == "c_cnt") {
    c_cnt = to_double(key, value);
  } else if (key == "c_aug") {
    c_aug = to_double(key, value);
  } else if (key == "hop_a") {
    hop_a = to_count(key, value);
  } else if (key == "hop_b") {
    hop_b = to_count(key, value);
  } else if (key == "base_cap") {
    base_cap = to_count(key, value);
  } else if (key == "exact_cap") {
    exact_cap = to_count(key, value);
  } else if (key == "seed") {
    seed = to_count(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  }
}

PipelineConfig PipelineConfig::parse(std::string_view text) {
  PipelineConfig cfg;
  std::size_t lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key=value");
    try {
      cfg.set(trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  cfg.validate();
  return cfg;
}

DivisionParams PipelineConfig::division_params(std::size_t r) const {
  DivisionParams p;
  p.r = r;
  p.gamma = gamma;
  p.c_div = c_div;
  p.c_cnt = c_cnt;
  p.separator.strategy = division_strategy;
  p.separator.budget = {c_sep, (2.0 - gamma) / 3.0, alpha};
  p.separator.seed = seed;
  p.separator.exact_cap = exact_cap;
  return p;
}

SkeletonParams PipelineConfig::skeleton_params() const {
  SkeletonParams p;
  p.separator.strategy = skeleton_strategy;
  p.separator.budget = {c_sep, 0.5, alpha};
  p.separator.seed = seed;
  p.separator.exact_cap = exact_cap;
  p.base_cap = base_cap;
  p.hop_a = hop_a;
  p.hop_b = hop_b;
  return p;
}

ChosenParams choose_params(std::size_t n, const PipelineConfig& cfg) {
  ChosenParams c;
  c.gamma = cfg.gamma;
  const std::size_t hi = std::max<std::size_t>(n, 1);
  if (cfg.r_override) {
    c.r = std::clamp<std::size_t>(*cfg.r_override, 1, hi);
  } else {
    const double r = std::ceil(std::pow(static_cast<double>(hi), 3.0 / (4.0 + cfg.gamma)));
    c.r = std::clamp<std::size_t>(static_cast<std::size_t>(r), 1, hi);
  }
  return c;
}

Vertex ReplacedGraph::local_of(Vertex global) const {
  auto it = std::lower_bound(verts.begin(), verts.end(), global);
  return it != verts.end() && *it == global ? static_cast<Vertex>(it - verts.begin()) : kNoVertex;
}

std::shared_ptr<const Preparation> prepare(const DiGraph& g, std::span<const Vertex> sources,
                                           const PipelineConfig& cfg) {
  cfg.validate();
  for (Vertex s : sources) {
    if (s < 0 || static_cast<std::size_t>(s) >= g.num_vertices()) {
      throw std::invalid_argument("source " + std::to_string(s) + " out of range");
    }
  }
  auto prep = std::make_shared<Preparation>();
  const ChosenParams cp = choose_params(g.num_vertices(), cfg);
  prep->r = cp.r;
  prep->gamma = cp.gamma;

  auto t0 = std::chrono::steady_clock::now();
  prep->division = build_division(g, cfg.division_params(cp.r));
  ++prep->division_builds;
  for (Vertex s : sources) prep->division.force_boundary(s);
  prep->divide_ms = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  const SkeletonParams sk = cfg.skeleton_params();
  prep->skeletons.reserve(prep->division.regions.size());
  for (const Region& reg : prep->division.regions) {
    prep->skeletons.push_back(build_skeleton(reg, sk));
    prep->merge_ops += prep->skeletons.back().stats.merge_ops;
  }
  ++prep->skeleton_builds;

  // Replaced graph: cheapest boundary-clique arc per ordered pair.
  ReplacedGraph& rg = prep->replaced;
  prep->region_of_internal.assign(g.num_vertices(), -1);
  for (const Region& reg : prep->division.regions) {
    rg.verts.insert(rg.verts.end(), reg.boundary.begin(), reg.boundary.end());
    for (Vertex v : reg.vertices) {
      if (!reg.is_boundary(v)) prep->region_of_internal[v] = reg.id;
    }
  }
  std::sort(rg.verts.begin(), rg.verts.end());
  rg.verts.erase(std::unique(rg.verts.begin(), rg.verts.end()), rg.verts.end());
  std::map<std::pair<Vertex, Vertex>, std::pair<Weight, ReplacedGraph::ArcRef>> best;
  for (const SkeletonPair& sp : prep->skeletons) {
    const DistMatrix& h = sp.H;
    for (std::size_t i = 0; i < h.size(); ++i) {
      for (std::size_t j = 0; j < h.size(); ++j) {
        if (i == j || h.at(i, j) == kInf) continue;
        const auto key = std::make_pair(rg.local_of(h.verts[i]), rg.local_of(h.verts[j]));
        auto it = best.find(key);
        if (it == best.end() || h.at(i, j) < it->second.first) {
          best[key] = {h.at(i, j), {sp.region_id, h.verts[i], h.verts[j]}};
        }
      }
    }
  }
  std::vector<Edge> arcs;
  arcs.reserve(best.size());
  for (const auto& [key, val] : best) {
    arcs.push_back({key.first, key.second, val.first});
    rg.arcs.push_back(val.second);
  }
  rg.graph = DiGraph(rg.verts.size(), std::move(arcs));
  prep->skeleton_ms = ms_since(t0);
  return prep;
}

namespace {

std::vector<EdgeId> expand_replaced(const Preparation& prep, EdgeId arc) {
  const auto& ref = prep.replaced.arcs[static_cast<std::size_t>(arc)];
  return expand_path(prep.skeletons[static_cast<std::size_t>(ref.region)], ref.a, ref.b);
}

[[noreturn]] void throw_expanded_cycle(const DiGraph& g, const Preparation& prep,
                                       const NegativeCycle& c) {
  std::vector<EdgeId> edges;
  for (EdgeId arc : c.edges()) {
    const auto part = expand_replaced(prep, arc);
    edges.insert(edges.end(), part.begin(), part.end());
  }
  std::vector<Vertex> verts;
  for (EdgeId e : edges) verts.push_back(g.edge(e).tail);
  throw NegativeCycle(std::move(verts), std::move(edges));
}

// Predecessor tree over tight edges, found breadth-first from s.
void tight_tree(const DiGraph& g, SSSPResult& r) {
  const std::size_t n = g.num_vertices();
  r.pred.assign(n, {});
  std::vector<char> seen(n, 0);
  std::vector<Vertex> queue{r.source};
  seen[r.source] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Vertex u = queue[i];
    for (EdgeId e : g.out_edges(u)) {
      const Edge& ed = g.edge(e);
      if (seen[ed.head] || r.dist[ed.head] == kInf) continue;
      if (add(r.dist[u], ed.length) != r.dist[ed.head]) continue;
      seen[ed.head] = 1;
      r.pred[ed.head] = {u, e};
      queue.push_back(ed.head);
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (r.dist[v] != kInf && !seen[v]) throw std::logic_error("distance not realised by tight edges");
  }
}

}  // namespace

PipelineResult solve_prepared(const DiGraph& g, Vertex s, std::shared_ptr<const Preparation> prep,
                              const PipelineConfig& cfg) {
  const Preparation& P = *prep;
  const std::size_t n = g.num_vertices();
  PipelineResult out;
  out.prep = prep;
  out.times.divide_ms = P.divide_ms;
  out.times.skeleton_ms = P.skeleton_ms;
  out.sssp.source = s;
  out.sssp.dist.assign(n, kInf);
  out.via_arc.assign(n, kNoEdge);

  const Vertex ls = P.replaced.local_of(s);
  if (ls == kNoVertex) throw std::invalid_argument("source is not on a boundary; prepare it first");

  auto t0 = std::chrono::steady_clock::now();
  SSSPResult rep;
  try {
    rep = run_engine(cfg.engine, P.replaced.graph, ls);
  } catch (const NegativeCycle& c) {
    throw_expanded_cycle(g, P, c);
  }
  for (std::size_t i = 0; i < P.replaced.verts.size(); ++i) {
    const Vertex v = P.replaced.verts[i];
    out.sssp.dist[v] = rep.dist[i];
    out.via_arc[v] = rep.pred[i].edge;
  }
  out.sssp.stats.relaxations += rep.stats.relaxations;
  out.sssp.stats.rounds += rep.stats.rounds;
  out.sssp.stats.phases = rep.stats.phases;
  out.times.replaced_ms = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  const SkeletonParams sk = cfg.skeleton_params();
  std::vector<std::pair<Vertex, Weight>> seeds;
  for (const Region& reg : P.division.regions) {
    if (reg.boundary.size() == reg.vertices.size()) continue;  // nothing internal
    const SkeletonPair& sp = P.skeletons[static_cast<std::size_t>(reg.id)];
    seeds.clear();
    for (Vertex b : reg.boundary) {
      if (out.sssp.dist[b] != kInf) seeds.emplace_back(reg.local_of(b), out.sssp.dist[b]);
    }
    if (seeds.empty()) continue;
    const SSSPResult in = bellman_ford_bounded(sp.g_aug, seeds, sp.hops(sk));
    out.sssp.stats.relaxations += in.stats.relaxations;
    for (std::size_t i = 0; i < reg.vertices.size(); ++i) {
      const Vertex v = reg.vertices[i];
      if (reg.is_boundary(v)) continue;
      out.sssp.dist[v] = in.dist[i];
      out.via_arc[v] = in.pred[i].edge;
    }
  }
  // Audit: a tense edge means a negative cycle the stages above missed.
  if (find_tense_edge(g, out.sssp.dist) != kNoEdge) {
    bellman_ford(g, s);
    throw std::logic_error("tense edge left without a reachable negative cycle");
  }
  tight_tree(g, out.sssp);
  out.times.internal_ms = ms_since(t0);
  out.times.total_ms = out.times.divide_ms + out.times.skeleton_ms + out.times.replaced_ms +
                       out.times.internal_ms;
  return out;
}

PipelineResult solve_sssp(const DiGraph& g, Vertex s, const PipelineConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const Vertex src[] = {s};
  auto prep = prepare(g, src, cfg);
  PipelineResult r = solve_prepared(g, s, std::move(prep), cfg);
  r.times.total_ms = ms_since(t0);
  return r;
}

std::vector<PipelineResult> solve_multi(const DiGraph& g, std::span<const Vertex> sources,
                                        const PipelineConfig& cfg) {
  auto prep = prepare(g, sources, cfg);
  std::vector<PipelineResult> out;
  out.reserve(sources.size());
  for (Vertex s : sources) out.push_back(solve_prepared(g, s, prep, cfg));
  return out;
}

std::vector<EdgeId> extract_path(const DiGraph& g, const PipelineResult& r, Vertex v) {
  const Preparation& P = *r.prep;
  if (v < 0 || static_cast<std::size_t>(v) >= g.num_vertices()) {
    throw std::invalid_argument("vertex out of range");
  }
  if (r.sssp.dist[v] == kInf) throw Unreachable("vertex " + std::to_string(v) + " is unreachable");
  std::vector<std::vector<EdgeId>> pieces;
  Vertex cur = v;
  for (std::size_t guard = 0; cur != r.sssp.source; ++guard) {
    if (guard > g.num_vertices()) throw std::logic_error("predecessor walk does not terminate");
    const EdgeId arc = r.via_arc[cur];
    if (arc == kNoEdge) throw std::logic_error("missing predecessor arc");
    const int reg = P.region_of_internal[cur];
    if (reg < 0) {
      pieces.push_back(expand_replaced(P, arc));
      cur = P.replaced.arcs[static_cast<std::size_t>(arc)].a;
    } else {
      const SkeletonPair& sp = P.skeletons[static_cast<std::size_t>(reg)];
      pieces.push_back(expand_arc(sp, arc));
      cur = sp.local_to_global[sp.g_aug.edge(arc).tail];
    }
  }
  std::vector<EdgeId> path;
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) path.insert(path.end(), it->begin(), it->end());
  return path;
}

}  // namespace sepshort
