#include "sepshort/delta_apsp.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sepshort/sssp.hpp"

namespace sepshort {

DistMatrix::DistMatrix(std::vector<Vertex> labels, bool with_pred)
    : verts(std::move(labels)) {
  const std::size_t n = verts.size();
  dist.assign(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) dist[i * n + i] = 0;
  if (with_pred) pred.assign(n * n, kNoVertex);
}

std::optional<std::size_t> DistMatrix::index_of(Vertex label) const {
  auto it = std::lower_bound(verts.begin(), verts.end(), label);
  if (it == verts.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - verts.begin());
}

Weight DistMatrix::between(Vertex u, Vertex v) const {
  const auto i = index_of(u);
  const auto j = index_of(v);
  if (!i || !j) throw std::out_of_range("label not in matrix");
  return at(*i, *j);
}

DistMatrix DistMatrix::restrict_to(std::span<const Vertex> labels) const {
  std::vector<std::size_t> idx;
  idx.reserve(labels.size());
  for (Vertex v : labels) {
    const auto i = index_of(v);
    if (!i) throw std::out_of_range("label not in matrix");
    idx.push_back(*i);
  }
  DistMatrix out(std::vector<Vertex>(labels.begin(), labels.end()), has_pred());
  const std::size_t n = verts.size();
  const std::size_t m = idx.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      out.dist[a * m + b] = dist[idx[a] * n + idx[b]];
      if (has_pred()) out.pred[a * m + b] = pred[idx[a] * n + idx[b]];
    }
  }
  return out;
}

FloydWarshallResult floyd_warshall(const DiGraph& g, std::span<const Vertex> labels) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> lab(labels.begin(), labels.end());
  if (lab.empty()) {
    lab.resize(n);
    std::iota(lab.begin(), lab.end(), 0);
  }
  if (lab.size() != n) throw std::invalid_argument("label count mismatch");

  FloydWarshallResult r{DistMatrix(lab), std::vector<std::int32_t>(n * n, -1),
                        std::vector<EdgeId>(n * n, kNoEdge)};
  auto& D = r.matrix.dist;
  auto& P = r.matrix.pred;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edges()[e];
    if (ed.tail == ed.head) {
      if (ed.length < 0) throw negative_cycle_from(g, ed.tail);
      continue;
    }
    const std::size_t at = static_cast<std::size_t>(ed.tail) * n + static_cast<std::size_t>(ed.head);
    if (ed.length < D[at]) {
      D[at] = ed.length;
      r.direct[at] = static_cast<EdgeId>(e);
      P[at] = lab[ed.tail];
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const Weight dik = D[i * n + k];
      if (dik == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Weight dkj = D[k * n + j];
        if (dkj == kInf) continue;
        const Weight cand = add(dik, dkj);
        if (cand < D[i * n + j]) {
          if (i == j) throw negative_cycle_from(g, static_cast<Vertex>(i));
          D[i * n + j] = cand;
          r.mid[i * n + j] = static_cast<std::int32_t>(k);
          r.direct[i * n + j] = kNoEdge;
          P[i * n + j] = P[k * n + j];
        }
      }
    }
  }
  return r;
}

namespace {

bool strictly_sorted(const std::vector<Vertex>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

// Structural checks shared by validate_delta and merge_apsp.
void check_structure(const DeltaSystem& ds, std::vector<Vertex>& core, Report& rep) {
  if (ds.pieces.empty()) {
    rep.fail("delta system has no pieces");
    return;
  }
  core = ds.core;
  std::sort(core.begin(), core.end());
  if (std::adjacent_find(core.begin(), core.end()) != core.end()) {
    rep.fail("core has duplicate vertices");
  }
  for (std::size_t p = 0; p < ds.pieces.size(); ++p) {
    const DistMatrix& m = ds.pieces[p];
    if (!strictly_sorted(m.verts)) rep.fail("piece " + std::to_string(p) + ": labels not sorted/unique");
    if (m.dist.size() != m.size() * m.size()) rep.fail("piece " + std::to_string(p) + ": bad matrix shape");
    if (m.has_pred() && m.pred.size() != m.dist.size()) {
      rep.fail("piece " + std::to_string(p) + ": bad predecessor shape");
    }
    if (!std::includes(m.verts.begin(), m.verts.end(), core.begin(), core.end())) {
      rep.fail("piece " + std::to_string(p) + ": does not contain the core");
    }
  }
  if (!rep.ok() || ds.pieces.size() < 2) return;
  // Pairwise intersections equal the core iff no non-core vertex is shared.
  std::vector<std::pair<Vertex, std::size_t>> owner;
  for (std::size_t p = 0; p < ds.pieces.size(); ++p) {
    for (Vertex v : ds.pieces[p].verts) {
      if (!std::binary_search(core.begin(), core.end(), v)) owner.emplace_back(v, p);
    }
  }
  std::sort(owner.begin(), owner.end());
  for (std::size_t i = 1; i < owner.size(); ++i) {
    if (owner[i].first == owner[i - 1].first) {
      rep.fail("pieces " + std::to_string(owner[i - 1].second) + " and " +
               std::to_string(owner[i].second) + " intersect outside the core at vertex " +
               std::to_string(owner[i].first));
      return;
    }
  }
}

}  // namespace

Report validate_delta(const DeltaSystem& ds) {
  Report rep;
  std::vector<Vertex> core;
  check_structure(ds, core, rep);
  if (!rep.ok()) return rep;
  for (std::size_t p = 0; p < ds.pieces.size(); ++p) {
    const DistMatrix& m = ds.pieces[p];
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (m.at(i, i) != 0) {
        rep.fail("piece " + std::to_string(p) + ": nonzero diagonal at " + std::to_string(m.verts[i]));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t z = 0; z < n; ++z) {
        const Weight a = m.at(i, z);
        if (a == kInf) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (m.at(z, j) == kInf) continue;
          if (m.at(i, j) > add(a, m.at(z, j))) {
            rep.fail("piece " + std::to_string(p) + ": triangle inequality fails for (" +
                     std::to_string(m.verts[i]) + "," + std::to_string(m.verts[z]) + "," +
                     std::to_string(m.verts[j]) + ")");
            return rep;
          }
        }
      }
    }
  }
  return rep;
}

MergeResult merge_apsp_traced(const DeltaSystem& ds) {
  std::vector<Vertex> core;
  {
    Report rep;
    check_structure(ds, core, rep);
    if (!rep.ok()) throw InvalidDelta(rep.failures.front());
  }
  const std::size_t k = ds.pieces.size();
  const std::size_t t = core.size();
  bool track_pred = true;
  for (const auto& m : ds.pieces) track_pred = track_pred && (m.has_pred() || m.size() == 0);

  std::vector<Vertex> all;
  for (const auto& m : ds.pieces) all.insert(all.end(), m.verts.begin(), m.verts.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  const std::size_t N = all.size();
  auto merged_index = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), v) - all.begin());
  };

  // core_loc[p][c]: index of core[c] inside piece p.
  std::vector<std::vector<std::size_t>> core_loc(k, std::vector<std::size_t>(t));
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t c = 0; c < t; ++c) core_loc[p][c] = *ds.pieces[p].index_of(core[c]);
  }
  std::vector<std::size_t> tpos(t);
  for (std::size_t c = 0; c < t; ++c) tpos[c] = merged_index(core[c]);

  // Non-core vertices with their owning piece and index in it.
  struct Member {
    std::size_t merged;
    std::size_t piece;
    std::size_t local;
  };
  std::vector<Member> outer;
  for (std::size_t p = 0; p < k; ++p) {
    const auto& verts = ds.pieces[p].verts;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (!std::binary_search(core.begin(), core.end(), verts[i])) {
        outer.push_back({merged_index(verts[i]), p, i});
      }
    }
  }
  // k == 1 leaves nothing shared; one piece may still list a vertex once.
  std::sort(outer.begin(), outer.end(), [](const Member& a, const Member& b) { return a.merged < b.merged; });

  MergeResult res{DistMatrix(all, track_pred), std::vector<MergeVia>(N * N), 0};
  auto& D = res.matrix.dist;
  auto& P = res.matrix.pred;
  auto& V = res.via;
  auto piece_pred = [&](std::size_t p, std::size_t i, std::size_t j) {
    const DistMatrix& m = ds.pieces[p];
    return m.pred[i * m.size() + j];
  };
  auto negative_at = [&](std::size_t m) {
    throw NegativeCycle({all[m]}, {});
  };

  // Phase 1: core clique with min over pieces, then Floyd-Warshall.
  for (std::size_t a = 0; a < t; ++a) {
    for (std::size_t b = 0; b < t; ++b) {
      Weight best = kInf;
      std::size_t best_p = 0;
      for (std::size_t p = 0; p < k; ++p) {
        ++res.ops;
        const Weight d = ds.pieces[p].at(core_loc[p][a], core_loc[p][b]);
        if (d < best) {
          best = d;
          best_p = p;
        }
      }
      const std::size_t at = tpos[a] * N + tpos[b];
      if (a == b) {
        if (best < 0) negative_at(tpos[a]);
        D[at] = 0;
        continue;
      }
      D[at] = best;
      if (best != kInf) {
        V[at] = {-1, static_cast<std::int16_t>(best_p), ViaKind::kDirect};
        if (track_pred) P[at] = piece_pred(best_p, core_loc[best_p][a], core_loc[best_p][b]);
      }
    }
  }
  for (std::size_t z = 0; z < t; ++z) {
    const std::size_t tz = tpos[z];
    for (std::size_t a = 0; a < t; ++a) {
      const std::size_t ta = tpos[a];
      const Weight dz = D[ta * N + tz];
      res.ops += t;
      if (dz == kInf) continue;
      for (std::size_t b = 0; b < t; ++b) {
        const std::size_t tb = tpos[b];
        const Weight zb = D[tz * N + tb];
        if (zb == kInf) continue;
        const Weight cand = add(dz, zb);
        if (cand < D[ta * N + tb]) {
          if (a == b) negative_at(ta);
          D[ta * N + tb] = cand;
          V[ta * N + tb] = {static_cast<std::int32_t>(tz), -1, ViaKind::kMergedMerged};
          if (track_pred) P[ta * N + tb] = P[tz * N + tb];
        }
      }
    }
  }

  // Phases 2 and 3: core <-> W_i through one core vertex.
  for (const Member& w : outer) {
    const DistMatrix& pm = ds.pieces[w.piece];
    const std::size_t np = pm.size();
    const auto piece = static_cast<std::int16_t>(w.piece);
    for (std::size_t u = 0; u < t; ++u) {
      const std::size_t tu = tpos[u];
      Weight to_best = kInf, from_best = kInf;
      std::size_t to_z = 0, from_z = 0;
      for (std::size_t z = 0; z < t; ++z) {
        res.ops += 2;
        const std::size_t tz = tpos[z];
        const Weight a = D[tu * N + tz];
        const Weight b = pm.dist[core_loc[w.piece][z] * np + w.local];
        if (a != kInf && b != kInf) {
          const Weight cand = add(a, b);
          if (cand < to_best) {
            to_best = cand;
            to_z = z;
          }
        }
        const Weight c = pm.dist[w.local * np + core_loc[w.piece][z]];
        const Weight d = D[tz * N + tu];
        if (c != kInf && d != kInf) {
          const Weight cand = add(c, d);
          if (cand < from_best) {
            from_best = cand;
            from_z = z;
          }
        }
      }
      const std::size_t to_at = tu * N + w.merged;
      D[to_at] = to_best;
      if (to_best != kInf) {
        const std::size_t zl = core_loc[w.piece][to_z];
        if (to_z == u) {
          V[to_at] = {-1, piece, ViaKind::kDirect};
        } else {
          V[to_at] = {static_cast<std::int32_t>(tpos[to_z]), piece, ViaKind::kMergedThenPiece};
        }
        if (track_pred) P[to_at] = pm.pred[zl * np + w.local];
      }
      const std::size_t from_at = w.merged * N + tu;
      D[from_at] = from_best;
      if (from_best != kInf) {
        if (from_z == u) {
          V[from_at] = {-1, piece, ViaKind::kDirect};
          if (track_pred) P[from_at] = pm.pred[w.local * np + core_loc[w.piece][u]];
        } else {
          V[from_at] = {static_cast<std::int32_t>(tpos[from_z]), piece, ViaKind::kPieceThenMerged};
          if (track_pred) P[from_at] = P[tpos[from_z] * N + tu];
        }
      }
    }
  }

  // Phase 4: W x W through one core vertex, or inside the shared piece.
  for (const Member& a : outer) {
    for (const Member& b : outer) {
      const std::size_t at = a.merged * N + b.merged;
      Weight best = kInf;
      MergeVia via{};
      Vertex pr = kNoVertex;
      if (a.piece == b.piece) {
        const DistMatrix& pm = ds.pieces[a.piece];
        best = pm.dist[a.local * pm.size() + b.local];
        if (best != kInf) {
          via = {-1, static_cast<std::int16_t>(a.piece),
                 a.merged == b.merged ? ViaKind::kSelf : ViaKind::kDirect};
          if (track_pred) pr = pm.pred[a.local * pm.size() + b.local];
        }
      }
      for (std::size_t z = 0; z < t; ++z) {
        ++res.ops;
        const std::size_t tz = tpos[z];
        const Weight x = D[a.merged * N + tz];
        const Weight y = D[tz * N + b.merged];
        if (x == kInf || y == kInf) continue;
        const Weight cand = add(x, y);
        if (cand < best) {
          best = cand;
          via = {static_cast<std::int32_t>(tz), -1, ViaKind::kMergedMerged};
          if (track_pred) pr = P[tz * N + b.merged];
        }
      }
      if (a.merged == b.merged) {
        if (best < 0) negative_at(a.merged);
        D[at] = 0;
        V[at] = {};
        if (track_pred) P[at] = kNoVertex;
        continue;
      }
      D[at] = best;
      V[at] = via;
      if (track_pred) P[at] = pr;
    }
  }
  return res;
}

DistMatrix merge_apsp(const DeltaSystem& ds) { return merge_apsp_traced(ds).matrix; }

double merge_op_bound(const DeltaSystem& ds) {
  std::vector<Vertex> all;
  for (const auto& m : ds.pieces) all.insert(all.end(), m.verts.begin(), m.verts.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  const double n = static_cast<double>(all.size());
  const double t = static_cast<double>(ds.core.size());
  return n * n * t + n * t * t + t * t * t;
}

UnionGraph union_graph(const DeltaSystem& ds) {
  UnionGraph ug;
  for (const auto& m : ds.pieces) ug.verts.insert(ug.verts.end(), m.verts.begin(), m.verts.end());
  std::sort(ug.verts.begin(), ug.verts.end());
  ug.verts.erase(std::unique(ug.verts.begin(), ug.verts.end()), ug.verts.end());
  auto idx = [&](Vertex v) {
    return static_cast<Vertex>(std::lower_bound(ug.verts.begin(), ug.verts.end(), v) - ug.verts.begin());
  };
  std::vector<Edge> edges;
  for (const auto& m : ds.pieces) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (i == j || m.at(i, j) == kInf) continue;
        edges.push_back({idx(m.verts[i]), idx(m.verts[j]), m.at(i, j)});
      }
    }
  }
  ug.graph = DiGraph(ug.verts.size(), std::move(edges));
  return ug;
}

std::string to_tsv(const DistMatrix& m) {
  std::ostringstream os;
  for (Vertex v : m.verts) os << '\t' << v;
  os << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << m.verts[i];
    for (std::size_t j = 0; j < m.size(); ++j) {
      os << '\t';
      if (m.at(i, j) == kInf) {
        os << "inf";
      } else {
        os << m.at(i, j);
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace sepshort
