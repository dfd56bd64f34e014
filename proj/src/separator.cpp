#include "sepshort/separator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <string>

namespace sepshort {

Strategy parse_strategy(std::string_view name) {
  if (name == "exact") return Strategy::kExact;
  if (name == "bfs-level") return Strategy::kBfsLevel;
  if (name == "local-search") return Strategy::kLocalSearch;
  throw std::invalid_argument("unknown separator strategy '" + std::string(name) + "'");
}

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kExact: return "exact";
    case Strategy::kBfsLevel: return "bfs-level";
    case Strategy::kLocalSearch: return "local-search";
  }
  return "?";
}

double SeparatorBudget::f_bound(std::size_t n) const {
  return c_sep * std::pow(static_cast<double>(n), e_sep);
}

void SeparatorBudget::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
  if (!(c_sep > 0.0)) throw std::invalid_argument("c_sep must be positive");
  if (!(e_sep > 0.0 && e_sep <= 1.0)) throw std::invalid_argument("e_sep must be in (0,1]");
}

SeparatorOptions SeparatorOptions::parse(std::string_view text) {
  SeparatorOptions o;
  auto number = [](std::string_view v) {
    // from_chars for double is missing on some toolchains.
    std::size_t used = 0;
    const std::string s(v);
    const double d = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
    return d;
  };
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("expected key=value");
    const auto key = item.substr(0, eq);
    const auto val = item.substr(eq + 1);
    if (key == "strategy") {
      o.strategy = parse_strategy(val);
    } else if (key == "c") {
      o.budget.c_sep = number(val);
    } else if (key == "e") {
      o.budget.e_sep = number(val);
    } else if (key == "alpha") {
      o.budget.alpha = number(val);
    } else if (key == "seed") {
      o.seed = static_cast<std::uint64_t>(number(val));
    } else if (key == "cap") {
      o.exact_cap = static_cast<std::size_t>(number(val));
    } else {
      throw std::invalid_argument("unknown separator key '" + std::string(key) + "'");
    }
  }
  o.budget.validate();
  return o;
}

namespace {

constexpr std::uint8_t kSideA = 0;
constexpr std::uint8_t kSideB = 1;
constexpr std::uint8_t kSep = 2;

struct Candidate {
  std::vector<std::uint8_t> side;
  std::size_t sep_size = 0;
  double max_side = 0.0;

  bool empty() const noexcept { return side.empty(); }
};

class Searcher {
 public:
  Searcher(const DiGraph& g, const VertexWeighting& w, const SeparatorOptions& opts)
      : adj_(undirected_adjacency(g)),
        w_(w),
        n_(g.num_vertices()),
        total_(w.total()),
        limit_(opts.budget.alpha * w.total() + 1e-9 * std::max(1.0, w.total())),
        opts_(opts) {}

  Separation run() {
    if (n_ == 1) {
      consider_labels(std::vector<std::uint8_t>{kSep});
    } else if (opts_.strategy == Strategy::kExact) {
      exact();
    } else {
      level_cuts();
      if (opts_.strategy == Strategy::kLocalSearch) local_search();
    }
    // Everything in the separator is always legal.
    if (best_.empty()) consider_labels(std::vector<std::uint8_t>(n_, kSep));
    return to_separation(best_);
  }

 private:
  bool fits(double x) const { return x <= limit_; }

  bool better(const Candidate& x, const Candidate& y) const {
    if (y.empty()) return true;
    if (x.sep_size != y.sep_size) return x.sep_size < y.sep_size;
    if (std::abs(x.max_side - y.max_side) > 1e-12) return x.max_side < y.max_side;
    for (std::size_t v = 0; v < n_; ++v) {
      const bool xs = x.side[v] == kSep;
      const bool ys = y.side[v] == kSep;
      if (xs != ys) return xs;
    }
    return false;
  }

  // Quick reject on the numeric key before materialising a labeling.
  bool may_beat(std::size_t sep_size, double max_side) const {
    if (best_.empty()) return true;
    if (sep_size != best_.sep_size) return sep_size < best_.sep_size;
    return max_side <= best_.max_side + 1e-12;
  }

  void consider_labels(std::vector<std::uint8_t> side) {
    Candidate c;
    double wa = 0.0, wb = 0.0;
    for (std::size_t v = 0; v < n_; ++v) {
      if (side[v] == kSep) {
        ++c.sep_size;
      } else if (side[v] == kSideA) {
        wa += w_[static_cast<Vertex>(v)];
      } else {
        wb += w_[static_cast<Vertex>(v)];
      }
    }
    if (!fits(wa) || !fits(wb)) return;
    c.max_side = std::max(wa, wb);
    c.side = std::move(side);
    if (better(c, best_)) best_ = std::move(c);
  }

  Separation to_separation(const Candidate& c) const {
    Separation s;
    double wa = 0.0, wb = 0.0;
    for (std::size_t v = 0; v < n_; ++v) {
      const auto x = static_cast<Vertex>(v);
      if (c.side[v] != kSideB) s.a.push_back(x);
      if (c.side[v] != kSideA) s.b.push_back(x);
      if (c.side[v] == kSep) s.separator.push_back(x);
      if (c.side[v] == kSideA) wa += w_[x];
      if (c.side[v] == kSideB) wb += w_[x];
    }
    s.balance_alpha = total_ > 0.0 ? std::max(wa, wb) / total_ : 0.0;
    return s;
  }

  // ---- exact ---------------------------------------------------------------

  void exact() {
    if (n_ > opts_.exact_cap || n_ > 24) {
      throw std::invalid_argument("exact separator search limited to " +
                                  std::to_string(std::min<std::size_t>(opts_.exact_cap, 24)) +
                                  " vertices");
    }
    std::vector<std::uint32_t> nbr(n_, 0);
    for (std::size_t v = 0; v < n_; ++v) {
      for (Vertex u : adj_.neighbors(static_cast<Vertex>(v))) nbr[v] |= 1u << u;
    }
    const std::uint32_t full = n_ == 32 ? ~0u : ((1u << n_) - 1);

    std::vector<int> comb;
    for (std::size_t k = 0; k <= n_; ++k) {
      comb.resize(k);
      std::iota(comb.begin(), comb.end(), 0);
      while (true) {
        std::uint32_t sep = 0;
        for (int i : comb) sep |= 1u << i;
        try_separator(sep, full, nbr);
        // next combination in lexicographic order
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && comb[i] == static_cast<int>(n_ - k) + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      }
      if (!best_.empty()) return;
    }
  }

  void try_separator(std::uint32_t sep, std::uint32_t full, const std::vector<std::uint32_t>& nbr) {
    std::uint32_t rest = full & ~sep;
    std::vector<std::uint32_t> comps;
    std::vector<double> cw;
    while (rest) {
      std::uint32_t comp = rest & (~rest + 1);
      std::uint32_t frontier = comp;
      while (frontier) {
        std::uint32_t grow = 0;
        for (std::uint32_t f = frontier; f; f &= f - 1) grow |= nbr[std::countr_zero(f)];
        grow &= rest & ~comp;
        comp |= grow;
        frontier = grow;
      }
      rest &= ~comp;
      double wsum = 0.0;
      for (std::uint32_t f = comp; f; f &= f - 1) wsum += w_[std::countr_zero(f)];
      comps.push_back(comp);
      cw.push_back(wsum);
    }
    const double rest_w = std::accumulate(cw.begin(), cw.end(), 0.0);
    const std::size_t q = comps.size();
    double best_max = -1.0;
    std::uint64_t best_mask = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << q); ++mask) {
      double wa = 0.0;
      for (std::size_t i = 0; i < q; ++i) {
        if (mask >> i & 1) wa += cw[i];
      }
      const double wb = rest_w - wa;
      if (!fits(wa) || !fits(wb)) continue;
      const double mx = std::max(wa, wb);
      if (best_max < 0.0 || mx < best_max - 1e-12) {
        best_max = mx;
        best_mask = mask;
      }
    }
    if (best_max < 0.0) return;
    if (!may_beat(static_cast<std::size_t>(std::popcount(sep)), best_max)) return;
    std::vector<std::uint8_t> side(n_, kSideB);
    for (std::size_t v = 0; v < n_; ++v) {
      if (sep >> v & 1) side[v] = kSep;
    }
    for (std::size_t i = 0; i < q; ++i) {
      if (!(best_mask >> i & 1)) continue;
      for (std::uint32_t f = comps[i]; f; f &= f - 1) side[std::countr_zero(f)] = kSideA;
    }
    consider_labels(std::move(side));
  }

  // ---- BFS level cuts ------------------------------------------------------

  std::vector<std::vector<Vertex>> bfs_levels(Vertex root) const {
    std::vector<std::vector<Vertex>> levels;
    std::vector<Vertex> frontier{root};
    seen_stamp_++;
    mark_[root] = seen_stamp_;
    while (!frontier.empty()) {
      std::vector<Vertex> next;
      for (Vertex u : frontier) {
        for (Vertex v : adj_.neighbors(u)) {
          if (mark_[v] != seen_stamp_) {
            mark_[v] = seen_stamp_;
            next.push_back(v);
          }
        }
      }
      levels.push_back(std::move(frontier));
      frontier = std::move(next);
    }
    return levels;
  }

  Vertex peripheral(Vertex start) const {
    Vertex v = start;
    for (int round = 0; round < 2; ++round) {
      const auto levels = bfs_levels(v);
      const auto& last = levels.back();
      v = *std::min_element(last.begin(), last.end());
    }
    return v;
  }

  void level_cuts() {
    mark_.assign(n_, 0);
    // Components, ordered by smallest vertex.
    std::vector<std::vector<Vertex>> comps;
    {
      std::vector<char> seen(n_, 0);
      for (std::size_t s = 0; s < n_; ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp{static_cast<Vertex>(s)};
        seen[s] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i) {
          for (Vertex v : adj_.neighbors(comp[i])) {
            if (!seen[v]) {
              seen[v] = 1;
              comp.push_back(v);
            }
          }
        }
        comps.push_back(std::move(comp));
      }
    }
    std::vector<double> comp_w(comps.size(), 0.0);
    std::size_t heavy = 0;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      for (Vertex v : comps[c]) comp_w[c] += w_[v];
      if (comp_w[c] > comp_w[heavy]) heavy = c;
    }
    if (comps.size() > 1) pack_components(comps, comp_w);

    std::vector<std::vector<std::vector<Vertex>>> fixed(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
      if (c != heavy) fixed[c] = bfs_levels(peripheral(comps[c].front()));
    }

    std::vector<Vertex> roots;
    const Vertex first = comps[heavy].front();
    roots.push_back(first);
    roots.push_back(peripheral(first));
    roots.push_back(peripheral(roots.back()));
    std::mt19937_64 rng(opts_.seed);
    std::uniform_int_distribution<std::size_t> pick(0, comps[heavy].size() - 1);
    for (int i = 0; i < 2; ++i) roots.push_back(comps[heavy][pick(rng)]);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

    for (Vertex root : roots) {
      std::vector<std::vector<Vertex>> levels;
      for (std::size_t c = 0; c < comps.size(); ++c) {
        if (c > 0) levels.emplace_back();  // empty cut between components
        auto ls = c == heavy ? bfs_levels(root) : fixed[c];
        for (auto& l : ls) levels.push_back(std::move(l));
      }
      cuts_over(levels);
    }
  }

  void pack_components(const std::vector<std::vector<Vertex>>& comps,
                       const std::vector<double>& comp_w) {
    std::vector<std::size_t> order(comps.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return comp_w[a] > comp_w[b]; });
    std::vector<std::uint8_t> side(n_, kSideA);
    double wa = 0.0, wb = 0.0;
    for (std::size_t c : order) {
      const std::uint8_t s = wa <= wb ? kSideA : kSideB;
      (s == kSideA ? wa : wb) += comp_w[c];
      for (Vertex v : comps[c]) side[v] = s;
    }
    consider_labels(std::move(side));
  }

  void cuts_over(const std::vector<std::vector<Vertex>>& levels) {
    const std::size_t L = levels.size();
    std::vector<double> pw(L + 1, 0.0);
    for (std::size_t i = 0; i < L; ++i) {
      double s = 0.0;
      for (Vertex v : levels[i]) s += w_[v];
      pw[i + 1] = pw[i] + s;
    }
    auto materialize = [&](std::size_t i, std::size_t j) {
      // Separator = level i (and level j when j != i); A = strictly between.
      std::vector<std::uint8_t> side(n_, kSideB);
      if (i == j) {
        for (std::size_t l = 0; l < i; ++l) {
          for (Vertex v : levels[l]) side[v] = kSideA;
        }
      } else {
        for (std::size_t l = i + 1; l < j; ++l) {
          for (Vertex v : levels[l]) side[v] = kSideA;
        }
        for (Vertex v : levels[j]) side[v] = kSep;
      }
      for (Vertex v : levels[i]) side[v] = kSep;
      consider_labels(std::move(side));
    };

    for (std::size_t i = 0; i < L; ++i) {
      const double wa = pw[i];
      const double wb = pw[L] - pw[i + 1];
      if (fits(wa) && fits(wb) && may_beat(levels[i].size(), std::max(wa, wb))) materialize(i, i);
    }
    // Two-level cuts among the thinnest levels.
    std::vector<std::size_t> thin(L);
    std::iota(thin.begin(), thin.end(), 0);
    std::stable_sort(thin.begin(), thin.end(), [&](std::size_t a, std::size_t b) {
      return levels[a].size() < levels[b].size();
    });
    thin.resize(std::min<std::size_t>(L, 16));
    std::sort(thin.begin(), thin.end());
    for (std::size_t x = 0; x < thin.size(); ++x) {
      for (std::size_t y = x + 1; y < thin.size(); ++y) {
        const std::size_t i = thin[x], j = thin[y];
        const double wa = pw[j] - pw[i + 1];
        const double wb = pw[L] - pw[j + 1] + pw[i];
        const std::size_t sz = levels[i].size() + levels[j].size();
        if (fits(wa) && fits(wb) && may_beat(sz, std::max(wa, wb))) materialize(i, j);
      }
    }
  }

  // ---- local search --------------------------------------------------------

  void local_search() {
    if (best_.empty()) return;
    std::vector<std::uint8_t> side = best_.side;
    double wa = 0.0, wb = 0.0;
    for (std::size_t v = 0; v < n_; ++v) {
      if (side[v] == kSideA) wa += w_[static_cast<Vertex>(v)];
      if (side[v] == kSideB) wb += w_[static_cast<Vertex>(v)];
    }
    bool improved = true;
    for (int pass = 0; improved && pass < 64; ++pass) {
      improved = false;
      for (std::size_t v = 0; v < n_; ++v) {
        if (side[v] != kSep) continue;
        const auto x = static_cast<Vertex>(v);
        std::size_t na = 0, nb = 0;
        Vertex lone_b = kNoVertex, lone_a = kNoVertex;
        for (Vertex u : adj_.neighbors(x)) {
          if (side[u] == kSideA) {
            ++na;
            lone_a = u;
          } else if (side[u] == kSideB) {
            ++nb;
            lone_b = u;
          }
        }
        const double wx = w_[x];
        // Moves that shrink the separator.
        if (nb == 0 && fits(wa + wx) && (na > 0 || wa <= wb)) {
          side[v] = kSideA;
          wa += wx;
          improved = true;
          continue;
        }
        if (na == 0 && fits(wb + wx)) {
          side[v] = kSideB;
          wb += wx;
          improved = true;
          continue;
        }
        // Size-neutral swaps that strictly improve balance.
        const double cur = std::max(wa, wb);
        if (nb == 1) {
          const double na2 = wa + wx, nb2 = wb - w_[lone_b];
          if (fits(na2) && std::max(na2, nb2) < cur - 1e-12) {
            side[v] = kSideA;
            side[lone_b] = kSep;
            wa = na2;
            wb = nb2;
            improved = true;
            continue;
          }
        }
        if (na == 1) {
          const double nb2 = wb + wx, na2 = wa - w_[lone_a];
          if (fits(nb2) && std::max(na2, nb2) < cur - 1e-12) {
            side[v] = kSideB;
            side[lone_a] = kSep;
            wa = na2;
            wb = nb2;
            improved = true;
          }
        }
      }
    }
    consider_labels(std::move(side));
  }

  Adjacency adj_;
  const VertexWeighting& w_;
  std::size_t n_;
  double total_;
  double limit_;
  SeparatorOptions opts_;
  Candidate best_;
  mutable std::vector<std::uint32_t> mark_;
  mutable std::uint32_t seen_stamp_ = 0;
};

}  // namespace

Separation separate(const DiGraph& g, const VertexWeighting& w, const SeparatorOptions& opts) {
  opts.budget.validate();
  if (g.num_vertices() == 0) throw std::invalid_argument("separate: empty graph");
  if (w.size() != g.num_vertices()) throw std::invalid_argument("separate: weighting size mismatch");
  Separation s = Searcher(g, w, opts).run();
  const double bound = opts.budget.f_bound(g.num_vertices());
  if (static_cast<double>(s.separator.size()) > bound + 1e-9) throw BudgetUnmet(std::move(s), bound);
  return s;
}

Report verify_separation(const DiGraph& g, const VertexWeighting& w, const Separation& s,
                         std::optional<double> alpha) {
  Report rep;
  const std::size_t n = g.num_vertices();
  std::vector<std::uint8_t> in(n, 0);  // bit 0: A, bit 1: B
  auto load = [&](const std::vector<Vertex>& set, std::uint8_t bit, const char* name) {
    for (Vertex v : set) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        rep.fail(std::string(name) + " contains out-of-range vertex " + std::to_string(v));
        continue;
      }
      in[v] |= bit;
    }
  };
  load(s.a, 1, "A");
  load(s.b, 2, "B");
  if (!rep.ok()) return rep;
  for (std::size_t v = 0; v < n; ++v) {
    if (!in[v]) {
      rep.fail("vertex " + std::to_string(v) + " is in neither A nor B");
      return rep;
    }
  }
  std::vector<Vertex> both;
  for (std::size_t v = 0; v < n; ++v) {
    if (in[v] == 3) both.push_back(static_cast<Vertex>(v));
  }
  std::vector<Vertex> sep = s.separator;
  std::sort(sep.begin(), sep.end());
  if (sep != both) rep.fail("separator differs from A intersect B");
  for (const Edge& e : g.edges()) {
    if ((in[e.tail] == 1 && in[e.head] == 2) || (in[e.tail] == 2 && in[e.head] == 1)) {
      rep.fail("crossing edge (" + std::to_string(e.tail) + "," + std::to_string(e.head) + ")");
      return rep;
    }
  }
  const double a = alpha.value_or(s.balance_alpha);
  double wa = 0.0, wb = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    if (in[v] == 1) wa += w[static_cast<Vertex>(v)];
    if (in[v] == 2) wb += w[static_cast<Vertex>(v)];
  }
  const double lim = a * w.total() + 1e-9 * std::max(1.0, w.total());
  if (wa > lim) rep.fail("w(A\\B) = " + std::to_string(wa) + " exceeds alpha*w(G)");
  if (wb > lim) rep.fail("w(B\\A) = " + std::to_string(wb) + " exceeds alpha*w(G)");
  return rep;
}

namespace {

// Subgraph of g induced by `verts` (sorted), with local ids.
DiGraph induced(const DiGraph& g, std::span<const Vertex> verts) {
  std::vector<Edge> edges;
  auto local = [&](Vertex v) -> Vertex {
    auto it = std::lower_bound(verts.begin(), verts.end(), v);
    return it != verts.end() && *it == v ? static_cast<Vertex>(it - verts.begin()) : kNoVertex;
  };
  for (Vertex v : verts) {
    for (EdgeId e : g.out_edges(v)) {
      const Vertex h = local(g.edge(e).head);
      if (h != kNoVertex) edges.push_back({local(v), h, 0});
    }
  }
  return DiGraph(verts.size(), std::move(edges));
}

}  // namespace

ThreeWaySplit double_balanced_split(const DiGraph& g, std::span<const Vertex> region,
                                    std::span<const Vertex> boundary,
                                    const SeparatorOptions& opts) {
  std::vector<Vertex> verts(region.begin(), region.end());
  std::sort(verts.begin(), verts.end());
  std::vector<Vertex> bnd(boundary.begin(), boundary.end());
  std::sort(bnd.begin(), bnd.end());
  if (!std::includes(verts.begin(), verts.end(), bnd.begin(), bnd.end())) {
    throw std::invalid_argument("boundary must lie inside the region");
  }

  const DiGraph sub = induced(g, verts);
  const Separation first = separate(sub, VertexWeighting::uniform(verts.size()), opts);

  std::vector<Vertex> only_a, only_b;
  std::set_difference(first.a.begin(), first.a.end(), first.b.begin(), first.b.end(),
                      std::back_inserter(only_a));
  std::set_difference(first.b.begin(), first.b.end(), first.a.begin(), first.a.end(),
                      std::back_inserter(only_b));
  auto to_global = [&](const std::vector<Vertex>& local) {
    std::vector<Vertex> out;
    out.reserve(local.size());
    for (Vertex v : local) out.push_back(verts[v]);
    return out;
  };
  auto count_boundary = [&](const std::vector<Vertex>& global) {
    std::size_t c = 0;
    for (Vertex v : global) c += std::binary_search(bnd.begin(), bnd.end(), v);
    return c;
  };

  ThreeWaySplit split;
  split.separator = to_global(first.separator);
  std::vector<Vertex> pa = to_global(only_a), pb = to_global(only_b);
  const std::size_t ba = count_boundary(pa), bb = count_boundary(pb);
  if (2 * std::max(ba, bb) <= bnd.size()) {
    split.parts = {std::move(pa), std::move(pb), {}};
    return split;
  }
  std::vector<Vertex>& heavy = ba >= bb ? pa : pb;
  std::vector<Vertex>& light = ba >= bb ? pb : pa;

  const DiGraph sub2 = induced(g, heavy);
  std::vector<Vertex> marked;
  for (std::size_t i = 0; i < heavy.size(); ++i) {
    if (std::binary_search(bnd.begin(), bnd.end(), heavy[i])) marked.push_back(static_cast<Vertex>(i));
  }
  const Separation second =
      separate(sub2, VertexWeighting::indicator(heavy.size(), marked), opts);
  std::vector<Vertex> qa, qb;
  for (Vertex v : second.a) {
    if (!std::binary_search(second.separator.begin(), second.separator.end(), v)) qa.push_back(heavy[v]);
  }
  for (Vertex v : second.b) {
    if (!std::binary_search(second.separator.begin(), second.separator.end(), v)) qb.push_back(heavy[v]);
  }
  for (Vertex v : second.separator) split.separator.push_back(heavy[v]);
  std::sort(split.separator.begin(), split.separator.end());
  split.parts = {std::move(light), std::move(qa), std::move(qb)};
  return split;
}

}  // namespace sepshort
