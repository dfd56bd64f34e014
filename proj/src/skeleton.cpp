#include "sepshort/skeleton.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sepshort/errors.hpp"
#include "sepshort/sssp.hpp"

namespace sepshort {

std::size_t hop_budget(std::size_t depth, std::size_t a, std::size_t b) { return a * depth + b; }

Vertex SkeletonPair::local_of(Vertex global) const {
  auto it = std::lower_bound(local_to_global.begin(), local_to_global.end(), global);
  return it != local_to_global.end() && *it == global
             ? static_cast<Vertex>(it - local_to_global.begin())
             : kNoVertex;
}

namespace {

class Builder {
 public:
  Builder(const Region& region, const SkeletonParams& params, SkeletonPair& out)
      : region_(region), params_(params), out_(out) {
    opts_ = params.separator;
    opts_.budget.e_sep = 0.5;
  }

  int build(std::vector<Vertex> verts, std::vector<Vertex> bnd, std::vector<EdgeId> edges) {
    const int id = static_cast<int>(out_.nodes.size());
    out_.nodes.emplace_back();
    {
      SkeletonNode& node = out_.nodes[id];
      node.vertices = std::move(verts);
      node.boundary = std::move(bnd);
      node.edges = std::move(edges);
    }
    const DiGraph ng = node_graph(id);
    if (out_.nodes[id].vertices.size() <= params_.base_cap || !split(id, ng)) make_base(id, ng);
    return id;
  }

 private:
  DiGraph node_graph(int id) const {
    const SkeletonNode& node = out_.nodes[id];
    return edge_subgraph(region_.local_graph, node.vertices, node.edges);
  }

  [[noreturn]] void rethrow_global(int id, const NegativeCycle& c) const {
    const SkeletonNode& node = out_.nodes[id];
    std::vector<Vertex> vs;
    std::vector<EdgeId> es;
    for (Vertex v : c.vertices()) vs.push_back(region_.vertices[node.vertices[v]]);
    for (EdgeId e : c.edges()) es.push_back(region_.edge_ids[node.edges[e]]);
    throw NegativeCycle(std::move(vs), std::move(es));
  }

  void make_base(int id, const DiGraph& ng) {
    FloydWarshallResult fw;
    try {
      fw = floyd_warshall(ng, out_.nodes[id].vertices);
    } catch (const NegativeCycle& c) {
      rethrow_global(id, c);
    }
    SkeletonNode& node = out_.nodes[id];
    const std::size_t k = node.vertices.size();
    out_.stats.fw_ops += static_cast<std::uint64_t>(k) * k * k;
    node.base = true;
    node.depth = 0;
    node.matrix = std::move(fw.matrix);
    node.fw_mid = std::move(fw.mid);
    node.fw_direct = std::move(fw.direct);
    for (EdgeId& e : node.fw_direct) {
      if (e != kNoEdge) e = node.edges[e];
    }
  }

  bool split(int id, const DiGraph& ng) {
    std::vector<Vertex> all(ng.num_vertices());
    std::iota(all.begin(), all.end(), 0);
    std::vector<Vertex> bnd_local;
    {
      const SkeletonNode& node = out_.nodes[id];
      for (Vertex b : node.boundary) {
        bnd_local.push_back(static_cast<Vertex>(
            std::lower_bound(node.vertices.begin(), node.vertices.end(), b) - node.vertices.begin()));
      }
    }
    ThreeWaySplit tw;
    ++out_.stats.separator_calls;
    try {
      tw = double_balanced_split(ng, all, bnd_local, opts_);
    } catch (BudgetUnmet& e) {
      std::vector<Vertex> g;
      for (Vertex v : out_.nodes[id].vertices) g.push_back(region_.vertices[v]);
      e.set_region(std::move(g));
      throw;
    }

    const std::size_t nv = ng.num_vertices();
    std::vector<int> part(nv, -1);  // -1: separator
    int nonempty = 0;
    for (int i = 0; i < 3; ++i) {
      for (Vertex v : tw.parts[i]) part[v] = i;
      nonempty += !tw.parts[i].empty();
    }
    if (nonempty < 2) return false;

    const SkeletonNode& node = out_.nodes[id];
    std::vector<Vertex> X;
    for (Vertex v : tw.separator) X.push_back(node.vertices[v]);
    std::array<std::vector<EdgeId>, 3> child_edges;
    int first = -1;
    for (int i = 0; i < 3 && first < 0; ++i) {
      if (!tw.parts[i].empty()) first = i;
    }
    for (std::size_t e = 0; e < ng.num_edges(); ++e) {
      const Edge& ed = ng.edge(static_cast<EdgeId>(e));
      int p = part[ed.tail] >= 0 ? part[ed.tail] : part[ed.head];
      if (p < 0) p = first;
      child_edges[p].push_back(node.edges[e]);
    }
    std::array<std::vector<Vertex>, 3> cv, cb;
    for (int i = 0; i < 3; ++i) {
      if (tw.parts[i].empty()) continue;
      cv[i] = X;
      cb[i] = X;
      for (Vertex v : tw.parts[i]) {
        const Vertex rl = node.vertices[v];
        cv[i].push_back(rl);
        if (std::binary_search(node.boundary.begin(), node.boundary.end(), rl)) cb[i].push_back(rl);
      }
      std::sort(cv[i].begin(), cv[i].end());
      std::sort(cb[i].begin(), cb[i].end());
    }

    std::vector<int> kids;
    for (int i = 0; i < 3; ++i) {
      if (tw.parts[i].empty()) continue;
      kids.push_back(build(std::move(cv[i]), std::move(cb[i]), std::move(child_edges[i])));
    }

    DeltaSystem ds;
    ds.core = X;
    std::size_t depth = 0;
    for (int c : kids) {
      const SkeletonNode& child = out_.nodes[c];
      ds.pieces.push_back(child.matrix.restrict_to(child.boundary));
      depth = std::max(depth, child.depth + 1);
    }
    if (params_.check_deltas) {
      Report r = validate_delta(ds);
      for (auto& f : r.failures) out_.delta_report.fail("node " + std::to_string(id) + ": " + f);
    }
    MergeResult merged;
    try {
      merged = merge_apsp_traced(ds);
    } catch (const NegativeCycle& c) {
      // The merge only names a vertex on the cycle; recover the cycle itself.
      const Vertex label = c.vertices().front();
      const SkeletonNode& nd = out_.nodes[id];
      const auto at = std::lower_bound(nd.vertices.begin(), nd.vertices.end(), label);
      rethrow_global(id, negative_cycle_from(ng, static_cast<Vertex>(at - nd.vertices.begin())));
    }
    out_.stats.merge_ops += merged.ops;

    SkeletonNode& nd = out_.nodes[id];
    nd.base = false;
    nd.separator = std::move(X);
    nd.children = std::move(kids);
    nd.depth = depth;
    nd.matrix = std::move(merged.matrix);
    nd.via = std::move(merged.via);
    return true;
  }

  const Region& region_;
  const SkeletonParams& params_;
  SeparatorOptions opts_;
  SkeletonPair& out_;
};

using Path = std::vector<EdgeId>;

void expand_entry(const SkeletonPair& sp, int node, std::size_t i, std::size_t j, Path& out);

void expand_labels(const SkeletonPair& sp, int node, Vertex a, Vertex b, Path& out) {
  const DistMatrix& m = sp.nodes[node].matrix;
  const auto i = m.index_of(a), j = m.index_of(b);
  if (!i || !j) throw std::logic_error("expansion label outside node matrix");
  expand_entry(sp, node, *i, *j, out);
}

void expand_entry(const SkeletonPair& sp, int node, std::size_t i, std::size_t j, Path& out) {
  const SkeletonNode& nd = sp.nodes[node];
  const std::size_t n = nd.matrix.size();
  if (i == j) return;
  if (nd.matrix.at(i, j) == kInf) throw Unreachable("no path inside region");
  const std::size_t at = i * n + j;
  if (nd.base) {
    const std::int32_t mid = nd.fw_mid[at];
    if (mid < 0) {
      out.push_back(nd.fw_direct[at]);
      return;
    }
    expand_entry(sp, node, i, static_cast<std::size_t>(mid), out);
    expand_entry(sp, node, static_cast<std::size_t>(mid), j, out);
    return;
  }
  const MergeVia& v = nd.via[at];
  const auto& lab = nd.matrix.verts;
  switch (v.kind) {
    case ViaKind::kSelf:
      return;
    case ViaKind::kDirect:
      expand_labels(sp, nd.children[v.piece], lab[i], lab[j], out);
      return;
    case ViaKind::kPieceThenMerged:
      expand_labels(sp, nd.children[v.piece], lab[i], lab[v.mid], out);
      expand_entry(sp, node, static_cast<std::size_t>(v.mid), j, out);
      return;
    case ViaKind::kMergedThenPiece:
      expand_entry(sp, node, i, static_cast<std::size_t>(v.mid), out);
      expand_labels(sp, nd.children[v.piece], lab[v.mid], lab[j], out);
      return;
    case ViaKind::kMergedMerged:
      expand_entry(sp, node, i, static_cast<std::size_t>(v.mid), out);
      expand_entry(sp, node, static_cast<std::size_t>(v.mid), j, out);
      return;
  }
}

}  // namespace

SkeletonPair build_skeleton(const Region& region, const SkeletonParams& params) {
  if (params.base_cap < 2) throw std::invalid_argument("base_cap must be at least 2");
  SkeletonPair sp;
  sp.region_id = region.id;
  sp.local_to_global = region.vertices;
  sp.edge_to_global = region.edge_ids;

  std::vector<Vertex> verts(region.vertices.size());
  std::iota(verts.begin(), verts.end(), 0);
  std::vector<Vertex> bnd;
  for (Vertex b : region.boundary) bnd.push_back(region.local_of(b));
  std::vector<EdgeId> edges(region.edge_ids.size());
  std::iota(edges.begin(), edges.end(), 0);

  Builder(region, params, sp).build(std::move(verts), bnd, std::move(edges));
  sp.stats.nodes = sp.nodes.size();
  sp.depth = sp.nodes[0].depth;

  DistMatrix h = sp.nodes[0].matrix.restrict_to(bnd);
  for (Vertex& v : h.verts) v = region.vertices[v];
  for (Vertex& v : h.pred) {
    if (v != kNoVertex) v = region.vertices[v];
  }
  sp.H = std::move(h);

  std::vector<Edge> arcs;
  for (std::size_t e = 0; e < region.local_graph.num_edges(); ++e) {
    arcs.push_back(region.local_graph.edge(static_cast<EdgeId>(e)));
    sp.arc_origin.push_back({-1, static_cast<Vertex>(e), kNoVertex});
  }
  for (std::size_t id = 0; id < sp.nodes.size(); ++id) {
    const DistMatrix& m = sp.nodes[id].matrix;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (i == j || m.at(i, j) == kInf) continue;
        arcs.push_back({m.verts[i], m.verts[j], m.at(i, j)});
        sp.arc_origin.push_back({static_cast<std::int32_t>(id), m.verts[i], m.verts[j]});
      }
    }
  }
  sp.g_aug = DiGraph(region.vertices.size(), std::move(arcs));
  return sp;
}

std::vector<EdgeId> expand_arc(const SkeletonPair& sp, EdgeId arc) {
  const ArcOrigin& o = sp.arc_origin.at(static_cast<std::size_t>(arc));
  Path local;
  if (o.node < 0) {
    local.push_back(o.a);
  } else {
    expand_labels(sp, o.node, o.a, o.b, local);
  }
  for (EdgeId& e : local) e = sp.edge_to_global[e];
  return local;
}

std::vector<EdgeId> expand_path(const SkeletonPair& sp, Vertex u, Vertex v) {
  const Vertex lu = sp.local_of(u), lv = sp.local_of(v);
  if (lu == kNoVertex || lv == kNoVertex) throw std::invalid_argument("vertex outside region");
  if (lu == lv) return {};
  const DistMatrix& root = sp.nodes[0].matrix;
  if (root.index_of(lu) && root.index_of(lv)) {
    Path local;
    expand_labels(sp, 0, lu, lv, local);
    for (EdgeId& e : local) e = sp.edge_to_global[e];
    return local;
  }
  const SSSPResult r = bellman_ford(sp.g_aug, lu);
  Path out;
  for (EdgeId arc : extract_path(sp.g_aug, r, lv)) {
    const Path piece = expand_arc(sp, arc);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

std::string dump_tree(const SkeletonPair& sp) {
  std::ostringstream os;
  auto rec = [&](auto&& self, int id, int indent) -> void {
    const SkeletonNode& nd = sp.nodes[id];
    os << std::string(2 * indent, ' ') << (nd.base ? "base" : "node") << " #" << id
       << " |V|=" << nd.vertices.size() << " |B|=" << nd.boundary.size()
       << " |X|=" << nd.separator.size() << " |E|=" << nd.edges.size() << " depth=" << nd.depth
       << "\n";
    for (int c : nd.children) self(self, c, indent + 1);
  };
  rec(rec, 0, 0);
  return os.str();
}

}  // namespace sepshort
