#include "sepshort/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <utility>

namespace sepshort {

namespace {

void build_csr(std::size_t n, const std::vector<Edge>& edges, bool by_tail,
               std::vector<std::size_t>& off, std::vector<EdgeId>& ids) {
  off.assign(n + 1, 0);
  for (const Edge& e : edges) ++off[static_cast<std::size_t>(by_tail ? e.tail : e.head) + 1];
  for (std::size_t v = 0; v < n; ++v) off[v + 1] += off[v];
  ids.assign(edges.size(), kNoEdge);
  std::vector<std::size_t> pos(off.begin(), off.end() - 1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto key = static_cast<std::size_t>(by_tail ? edges[i].tail : edges[i].head);
    ids[pos[key]++] = static_cast<EdgeId>(i);
  }
}

}  // namespace

DiGraph::DiGraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.tail < 0 || static_cast<std::size_t>(e.tail) >= n_ || e.head < 0 ||
        static_cast<std::size_t>(e.head) >= n_) {
      throw ValidationError("edge " + std::to_string(i) + " endpoint out of range");
    }
    if (e.length == kInf || e.length == std::numeric_limits<Weight>::min()) {
      throw ValidationError("edge " + std::to_string(i) + " has no finite length");
    }
    max_abs_ = std::max(max_abs_, e.length < 0 ? -e.length : e.length);
    if (e.length < 0) neg_mag_ = std::max(neg_mag_, -e.length);
  }
  build_csr(n_, edges_, true, out_off_, out_ids_);
  build_csr(n_, edges_, false, in_off_, in_ids_);
}

VertexWeighting::VertexWeighting(std::vector<double> w) : w_(std::move(w)) {
  for (double x : w_) {
    if (!(x >= 0.0)) throw ValidationError("vertex weights must be nonnegative");
    total_ += x;
  }
}

VertexWeighting VertexWeighting::uniform(std::size_t n) {
  return VertexWeighting(std::vector<double>(n, 1.0));
}

VertexWeighting VertexWeighting::indicator(std::size_t n,
                                           std::span<const Vertex> marked) {
  std::vector<double> w(n, 0.0);
  for (Vertex v : marked) w[static_cast<std::size_t>(v)] = 1.0;
  return VertexWeighting(std::move(w));
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_int(std::string_view tok, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "bad integer '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

DiGraph load_dimacs(std::string_view text) {
  std::size_t line_no = 0;
  bool have_header = false;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::vector<Edge> edges;

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    const auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate problem line");
      if (tok.size() != 4 || tok[1] != "sp") {
        throw ParseError(line_no, "expected 'p sp <n> <m>'");
      }
      n = parse_int<std::int64_t>(tok[2], line_no);
      m = parse_int<std::int64_t>(tok[3], line_no);
      if (n < 0 || m < 0 || n > std::numeric_limits<Vertex>::max() ||
          m > std::numeric_limits<EdgeId>::max()) {
        throw ParseError(line_no, "bad problem size");
      }
      edges.reserve(static_cast<std::size_t>(m));
      have_header = true;
    } else if (tok[0] == "a") {
      if (!have_header) throw ParseError(line_no, "arc before problem line");
      if (tok.size() != 4) throw ParseError(line_no, "expected 'a <u> <v> <w>'");
      const auto u = parse_int<std::int64_t>(tok[1], line_no);
      const auto v = parse_int<std::int64_t>(tok[2], line_no);
      const auto w = parse_int<std::int64_t>(tok[3], line_no);
      if (u < 1 || u > n || v < 1 || v > n) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": arc endpoint out of range");
      }
      if (w > kMaxInputLength || w < -kMaxInputLength) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": |length| exceeds 2^31-1");
      }
      edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), w});
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing problem line");
  if (static_cast<std::int64_t>(edges.size()) != m) {
    throw ValidationError("problem line declares " + std::to_string(m) +
                          " arcs, found " + std::to_string(edges.size()));
  }
  return DiGraph(static_cast<std::size_t>(n), std::move(edges));
}

DiGraph load_dimacs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_dimacs(ss.str());
}

std::string save_dimacs(const DiGraph& g) {
  std::string out = "p sp " + std::to_string(g.num_vertices()) + " " +
                    std::to_string(g.num_edges()) + "\n";
  for (const Edge& e : g.edges()) {
    out += "a ";
    out += std::to_string(e.tail + 1);
    out += ' ';
    out += std::to_string(e.head + 1);
    out += ' ';
    out += std::to_string(e.length);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::pair<Vertex, Vertex>> undirected_pairs(const DiGraph& g) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    if (e.tail == e.head) continue;
    pairs.emplace_back(std::min(e.tail, e.head), std::max(e.tail, e.head));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace

DiGraph underlying_undirected(const DiGraph& g) {
  std::vector<Edge> edges;
  for (auto [u, v] : undirected_pairs(g)) edges.push_back({u, v, 0});
  return DiGraph(g.num_vertices(), std::move(edges));
}

Adjacency undirected_adjacency(const DiGraph& g) {
  const std::size_t n = g.num_vertices();
  const auto pairs = undirected_pairs(g);
  Adjacency adj;
  adj.offsets.assign(n + 1, 0);
  for (auto [u, v] : pairs) {
    ++adj.offsets[static_cast<std::size_t>(u) + 1];
    ++adj.offsets[static_cast<std::size_t>(v) + 1];
  }
  for (std::size_t v = 0; v < n; ++v) adj.offsets[v + 1] += adj.offsets[v];
  adj.targets.resize(adj.offsets[n]);
  std::vector<std::size_t> pos(adj.offsets.begin(), adj.offsets.end() - 1);
  for (auto [u, v] : pairs) {
    adj.targets[pos[u]++] = v;
    adj.targets[pos[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adj.targets.begin() + static_cast<std::ptrdiff_t>(adj.offsets[v]),
              adj.targets.begin() + static_cast<std::ptrdiff_t>(adj.offsets[v + 1]));
  }
  return adj;
}

DiGraph edge_subgraph(const DiGraph& g, std::span<const Vertex> vertices,
                      std::span<const EdgeId> edge_ids) {
  auto local = [&](Vertex v) {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) {
      throw ValidationError("edge endpoint outside subgraph vertex set");
    }
    return static_cast<Vertex>(it - vertices.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(edge_ids.size());
  for (EdgeId id : edge_ids) {
    const Edge& e = g.edge(id);
    edges.push_back({local(e.tail), local(e.head), e.length});
  }
  return DiGraph(vertices.size(), std::move(edges));
}

}  // namespace sepshort
