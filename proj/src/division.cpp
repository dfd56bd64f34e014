#include "sepshort/division.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "sepshort/errors.hpp"

namespace sepshort {

Vertex Region::local_of(Vertex global) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), global);
  return it != vertices.end() && *it == global ? static_cast<Vertex>(it - vertices.begin())
                                               : kNoVertex;
}

bool Region::is_boundary(Vertex global) const {
  return std::binary_search(boundary.begin(), boundary.end(), global);
}

double Division::boundary_bound() const {
  return c_div * std::pow(static_cast<double>(r), e_sep);
}

double Division::count_bound() const {
  return c_cnt * std::max(1.0, static_cast<double>(n) / static_cast<double>(r));
}

std::vector<int> Division::regions_of(Vertex v) const {
  std::vector<int> ids;
  for (const Region& reg : regions) {
    if (reg.local_of(v) != kNoVertex) ids.push_back(reg.id);
  }
  return ids;
}

int Division::force_boundary(Vertex v) {
  for (Region& reg : regions) {
    if (reg.local_of(v) == kNoVertex) continue;
    if (!reg.is_boundary(v)) {
      reg.boundary.insert(std::lower_bound(reg.boundary.begin(), reg.boundary.end(), v), v);
      if (std::find(forced.begin(), forced.end(), v) == forced.end()) forced.push_back(v);
    }
    return reg.id;
  }
  throw std::invalid_argument("vertex " + std::to_string(v) + " lies in no region");
}

namespace {

struct Piece {
  std::vector<EdgeId> edges;   // sorted
  std::vector<Vertex> verts;   // sorted global
};

std::vector<Vertex> endpoints(const DiGraph& g, const std::vector<EdgeId>& edges) {
  std::vector<Vertex> vs;
  vs.reserve(2 * edges.size());
  for (EdgeId e : edges) {
    vs.push_back(g.edge(e).tail);
    vs.push_back(g.edge(e).head);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

class Builder {
 public:
  Builder(const DiGraph& g, const DivisionParams& p) : g_(g), p_(p), count_(g.num_vertices(), 0) {
    opts_ = p.separator;
    opts_.budget.e_sep = p.e_sep();
    r_ = std::max<std::size_t>(p.r, 1);
    for (const Edge& e : g.edges()) {
      if (e.tail != e.head) {
        r_ = std::max<std::size_t>(r_, 2);
        break;
      }
    }
    bound_ = p.c_div * std::pow(static_cast<double>(r_), p.e_sep());
  }

  Division run() {
    Division d;
    d.n = g_.num_vertices();
    d.m = g_.num_edges();
    d.r = r_;
    d.gamma = p_.gamma;
    d.e_sep = p_.e_sep();
    d.c_div = p_.c_div;
    d.c_cnt = p_.c_cnt;

    std::vector<Piece> stack;
    if (g_.num_edges() > 0) {
      Piece all;
      all.edges.resize(g_.num_edges());
      std::iota(all.edges.begin(), all.edges.end(), 0);
      all.verts = endpoints(g_, all.edges);
      for (Vertex v : all.verts) count_[v] = 1;
      stack.push_back(std::move(all));
    }
    std::vector<Piece> done;
    while (!stack.empty()) {
      Piece p = std::move(stack.back());
      stack.pop_back();
      const std::size_t nb = boundary_count(p);
      const bool too_big = p.verts.size() > r_;
      const bool too_much_boundary = static_cast<double>(nb) > bound_ + 1e-9;
      if (!too_big && !too_much_boundary) {
        done.push_back(std::move(p));
        continue;
      }
      auto [a, b] = split(p, too_big);
      for (Vertex v : p.verts) --count_[v];
      for (Vertex v : a.verts) ++count_[v];
      for (Vertex v : b.verts) ++count_[v];
      stack.push_back(std::move(b));
      stack.push_back(std::move(a));
    }

    for (std::size_t v = 0; v < g_.num_vertices(); ++v) {
      if (count_[v] != 0) continue;
      Piece iso;
      iso.verts = {static_cast<Vertex>(v)};
      count_[v] = 1;
      done.push_back(std::move(iso));
    }
    for (Piece& p : pack(std::move(done))) {
      Region reg;
      reg.id = static_cast<int>(d.regions.size());
      for (Vertex v : p.verts) {
        if (count_[v] >= 2) reg.boundary.push_back(v);
      }
      reg.local_graph = edge_subgraph(g_, p.verts, p.edges);
      reg.edge_ids = std::move(p.edges);
      reg.vertices = std::move(p.verts);
      d.regions.push_back(std::move(reg));
    }
    return d;
  }

 private:
  // Greedily merges consecutive finished pieces while the union stays within
  // r vertices and the boundary limit. Small components and isolated vertices
  // would otherwise each cost a region.
  std::vector<Piece> pack(std::vector<Piece> pieces) {
    std::vector<Piece> out;
    std::vector<std::uint8_t> mark(g_.num_vertices(), 0);
    for (Piece& p : pieces) {
      if (!out.empty()) {
        Piece& acc = out.back();
        for (Vertex v : acc.verts) mark[v] = 1;
        std::size_t shared = 0, nb = 0;
        for (Vertex v : p.verts) shared += mark[v];
        const std::size_t size = acc.verts.size() + p.verts.size() - shared;
        if (size <= r_) {
          for (Vertex v : acc.verts) nb += count_[v] - in(p, v) >= 2;
          for (Vertex v : p.verts) nb += !mark[v] && count_[v] >= 2;
        }
        for (Vertex v : acc.verts) mark[v] = 0;
        if (size <= r_ && static_cast<double>(nb) <= bound_ + 1e-9) {
          for (Vertex v : p.verts) {
            if (in(acc, v)) --count_[v];
          }
          acc.edges.insert(acc.edges.end(), p.edges.begin(), p.edges.end());
          std::sort(acc.edges.begin(), acc.edges.end());
          std::vector<Vertex> vs;
          std::set_union(acc.verts.begin(), acc.verts.end(), p.verts.begin(), p.verts.end(),
                         std::back_inserter(vs));
          acc.verts = std::move(vs);
          continue;
        }
      }
      out.push_back(std::move(p));
    }
    return out;
  }

  static bool in(const Piece& p, Vertex v) {
    return std::binary_search(p.verts.begin(), p.verts.end(), v);
  }

  std::size_t boundary_count(const Piece& p) const {
    std::size_t c = 0;
    for (Vertex v : p.verts) c += count_[v] >= 2;
    return c;
  }

  std::pair<Piece, Piece> split(const Piece& p, bool size_phase) {
    const DiGraph local = edge_subgraph(g_, p.verts, p.edges);
    VertexWeighting w;
    if (size_phase) {
      w = VertexWeighting::uniform(p.verts.size());
    } else {
      std::vector<Vertex> marked;
      for (std::size_t i = 0; i < p.verts.size(); ++i) {
        if (count_[p.verts[i]] >= 2) marked.push_back(static_cast<Vertex>(i));
      }
      w = VertexWeighting::indicator(p.verts.size(), marked);
    }
    Separation s;
    try {
      s = separate(local, w, opts_);
    } catch (BudgetUnmet& e) {
      e.set_region(p.verts);
      throw;
    }

    std::vector<std::uint8_t> in_a(p.verts.size(), 0);
    for (Vertex v : s.a) in_a[v] = 1;
    Piece a, b;
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
      const Edge& e = local.edge(static_cast<EdgeId>(i));
      const bool to_b = (!in_a[e.tail] || !in_a[e.head]);
      (to_b ? b : a).edges.push_back(p.edges[i]);
    }
    a.verts = endpoints(g_, a.edges);
    b.verts = endpoints(g_, b.edges);

    const bool progress = !a.edges.empty() && !b.edges.empty() &&
                          (size_phase ? std::max(a.verts.size(), b.verts.size()) < p.verts.size()
                                      : true);
    if (progress) return {std::move(a), std::move(b)};
    return halve(p, local);
  }

  // Fallback when the separator makes no progress: cut the edge list in two
  // by BFS distance from the smallest vertex.
  std::pair<Piece, Piece> halve(const Piece& p, const DiGraph& local) const {
    const Adjacency adj = undirected_adjacency(local);
    std::vector<std::int64_t> level(p.verts.size(), -1);
    std::vector<Vertex> queue;
    std::int64_t offset = 0;
    for (std::size_t s = 0; s < p.verts.size(); ++s) {
      if (level[s] >= 0) continue;
      level[s] = offset;
      queue.assign(1, static_cast<Vertex>(s));
      for (std::size_t i = 0; i < queue.size(); ++i) {
        for (Vertex v : adj.neighbors(queue[i])) {
          if (level[v] < 0) {
            level[v] = level[queue[i]] + 1;
            queue.push_back(v);
            offset = std::max(offset, level[v] + 1);
          }
        }
      }
      offset = std::max(offset, level[s] + 1);
    }
    std::vector<std::size_t> order(p.edges.size());
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](std::size_t i) {
      const Edge& e = local.edge(static_cast<EdgeId>(i));
      return std::min(level[e.tail], level[e.head]);
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return key(x) < key(y); });
    Piece a, b;
    for (std::size_t k = 0; k < order.size(); ++k) {
      (k < order.size() / 2 ? a : b).edges.push_back(p.edges[order[k]]);
    }
    std::sort(a.edges.begin(), a.edges.end());
    std::sort(b.edges.begin(), b.edges.end());
    a.verts = endpoints(g_, a.edges);
    b.verts = endpoints(g_, b.edges);
    return {std::move(a), std::move(b)};
  }

  const DiGraph& g_;
  DivisionParams p_;
  SeparatorOptions opts_;
  std::size_t r_ = 1;
  double bound_ = 0.0;
  std::vector<int> count_;
};

}  // namespace

Division build_division(const DiGraph& g, const DivisionParams& params) {
  if (params.r < 1) throw std::invalid_argument("r must be at least 1");
  if (!(params.gamma > 0.0 && params.gamma <= 0.5)) {
    throw std::invalid_argument("gamma must be in (0, 1/2]");
  }
  return Builder(g, params).run();
}

Report verify_division(const DiGraph& g, const Division& d) {
  Report rep;
  const std::size_t n = g.num_vertices();
  std::vector<int> owner(g.num_edges(), -1);
  std::vector<int> count(n, 0);
  for (const Region& reg : d.regions) {
    const std::string tag = "region " + std::to_string(reg.id) + ": ";
    for (EdgeId e : reg.edge_ids) {
      if (e < 0 || static_cast<std::size_t>(e) >= g.num_edges()) {
        rep.fail(tag + "edge partition: edge id " + std::to_string(e) + " out of range");
        continue;
      }
      if (owner[e] >= 0) {
        rep.fail(tag + "edge partition: edge " + std::to_string(e) + " also in region " +
                 std::to_string(owner[e]));
      }
      owner[e] = reg.id;
    }
    {
      // Vertices are the edge endpoints plus any vertices isolated in g.
      std::vector<EdgeId> ids = reg.edge_ids;
      std::erase_if(ids, [&](EdgeId e) { return e < 0 || static_cast<std::size_t>(e) >= g.num_edges(); });
      std::vector<Vertex> expect = endpoints(g, ids);
      for (Vertex v : reg.vertices) {
        if (v >= 0 && static_cast<std::size_t>(v) < n && g.out_edges(v).empty() &&
            g.in_edges(v).empty()) {
          expect.push_back(v);
        }
      }
      std::sort(expect.begin(), expect.end());
      if (reg.vertices.empty() || expect != reg.vertices) {
        rep.fail(tag + "vertex set differs from edge endpoints");
      }
    }
    if (reg.vertices.size() > d.r) {
      rep.fail(tag + "region size " + std::to_string(reg.vertices.size()) + " exceeds r = " +
               std::to_string(d.r));
    }
    for (Vertex v : reg.vertices) {
      if (v >= 0 && static_cast<std::size_t>(v) < n) ++count[v];
    }
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (owner[e] < 0) rep.fail("edge partition: edge " + std::to_string(e) + " in no region");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (count[v] == 0) rep.fail("vertex " + std::to_string(v) + " in no region");
  }
  for (const Region& reg : d.regions) {
    const std::string tag = "region " + std::to_string(reg.id) + ": ";
    std::vector<Vertex> expect;
    std::size_t forced_here = 0;
    for (Vertex v : reg.vertices) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) continue;
      const bool forced = std::find(d.forced.begin(), d.forced.end(), v) != d.forced.end() &&
                          reg.is_boundary(v) && count[v] < 2;
      if (count[v] >= 2 || forced) expect.push_back(v);
      forced_here += forced;
    }
    if (expect != reg.boundary) rep.fail(tag + "boundary membership differs from recomputed set");
    const double bound = d.boundary_bound() + static_cast<double>(forced_here);
    if (static_cast<double>(reg.boundary.size()) > bound + 1e-9) {
      rep.fail(tag + "boundary size " + std::to_string(reg.boundary.size()) + " exceeds " +
               std::to_string(bound));
    }
  }
  if (static_cast<double>(d.regions.size()) > d.count_bound() + 1e-9) {
    rep.fail("region count " + std::to_string(d.regions.size()) + " exceeds " +
             std::to_string(d.count_bound()));
  }
  return rep;
}

std::string division_to_jsonl(const Division& d) {
  using nlohmann::json;
  std::string out;
  json head = {{"n", d.n},         {"m", d.m},         {"r", d.r},
               {"gamma", d.gamma}, {"e_sep", d.e_sep}, {"c_div", d.c_div},
               {"c_cnt", d.c_cnt}, {"forced", d.forced}};
  out += head.dump() + "\n";
  for (const Region& reg : d.regions) {
    json line = {{"id", reg.id},
                 {"edges", reg.edge_ids},
                 {"boundary", reg.boundary},
                 {"vertices", reg.vertices}};
    out += line.dump() + "\n";
  }
  return out;
}

Division division_from_jsonl(const DiGraph& g, const std::string& text) {
  using nlohmann::json;
  Division d;
  std::size_t lineno = 0, pos = 0;
  bool have_head = false;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() : nl + 1;
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (!have_head) {
        d.n = j.at("n").get<std::size_t>();
        d.m = j.at("m").get<std::size_t>();
        d.r = j.at("r").get<std::size_t>();
        d.gamma = j.at("gamma").get<double>();
        d.e_sep = j.at("e_sep").get<double>();
        d.c_div = j.at("c_div").get<double>();
        d.c_cnt = j.at("c_cnt").get<double>();
        d.forced = j.at("forced").get<std::vector<Vertex>>();
        have_head = true;
        continue;
      }
      Region reg;
      reg.id = j.at("id").get<int>();
      reg.edge_ids = j.at("edges").get<std::vector<EdgeId>>();
      reg.boundary = j.at("boundary").get<std::vector<Vertex>>();
      reg.vertices = j.at("vertices").get<std::vector<Vertex>>();
      d.regions.push_back(std::move(reg));
    } catch (const json::exception& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!have_head) throw ParseError(lineno, "missing division header");
  if (d.n != g.num_vertices() || d.m != g.num_edges()) {
    throw ValidationError("division was built for a different graph");
  }
  for (Region& reg : d.regions) {
    const bool ids_ok = std::all_of(reg.edge_ids.begin(), reg.edge_ids.end(), [&](EdgeId e) {
      return e >= 0 && static_cast<std::size_t>(e) < g.num_edges();
    });
    try {
      if (!ids_ok) throw ValidationError("edge id out of range");
      reg.local_graph = edge_subgraph(g, reg.vertices, reg.edge_ids);
    } catch (const std::exception&) {
      // Leave the local graph empty; verify_division reports the mismatch.
      reg.local_graph = DiGraph(reg.vertices.size(), {});
    }
  }
  return d;
}

}  // namespace sepshort
