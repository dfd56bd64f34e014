#include "sepshort/bench.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "sepshort/errors.hpp"
#include "sepshort/generators.hpp"

namespace sepshort {

std::vector<BenchCase> parse_corpus(std::string_view text, const std::string& base_dir) {
  std::vector<BenchCase> cases;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    BenchCase c;
    if (!(ls >> c.name)) continue;
    if (!(ls >> c.source)) throw ParseError(lineno, "expected NAME SOURCE");
    c.is_file = c.source.size() > 3 && c.source.ends_with(".gr");
    if (c.is_file) c.source = (std::filesystem::path(base_dir) / c.source).string();
    std::string opt;
    while (ls >> opt) {
      const auto eq = opt.find('=');
      if (eq == std::string::npos) throw ParseError(lineno, "expected key=value, got '" + opt + "'");
      const std::string key = opt.substr(0, eq), val = opt.substr(eq + 1);
      try {
        if (key == "engines") {
          c.engines.clear();
          std::istringstream es(val);
          std::string e;
          while (std::getline(es, e, ',')) c.engines.push_back(parse_engine(e));
        } else if (key == "gamma") {
          c.gamma = std::stod(val);
        } else if (key == "source") {
          c.source_vertex = static_cast<Vertex>(std::stol(val)) - 1;
        } else {
          throw ParseError(lineno, "unknown option '" + key + "'");
        }
      } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
      }
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

std::string bench_csv_header() {
  return "#schema=sepshort-bench/1\n"
         "instance,n,m,L,gamma,r,engine,t_divide_ms,t_skeleton_ms,t_replaced_ms,t_internal_ms,"
         "t_total_ms,relaxations,merge_ops,verdict\n";
}

std::string bench_csv_row(const BenchRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%lld,%.7f,%zu,%s,%.3f,%.3f,%.3f,%.3f,%.3f,%llu,%llu,%s\n",
                r.instance.c_str(), r.n, r.m, static_cast<long long>(r.L), r.gamma, r.r,
                r.engine.c_str(), r.times.divide_ms, r.times.skeleton_ms, r.times.replaced_ms,
                r.times.internal_ms, r.times.total_ms,
                static_cast<unsigned long long>(r.relaxations),
                static_cast<unsigned long long>(r.merge_ops), r.verdict.c_str());
  return buf;
}

std::vector<BenchRecord> run_bench_case(const BenchCase& c, const PipelineConfig& base,
                                        std::uint64_t seed) {
  const DiGraph g = c.is_file ? load_dimacs_file(c.source) : generate(c.source, seed);
  if (c.source_vertex < 0 || static_cast<std::size_t>(c.source_vertex) >= g.num_vertices()) {
    throw std::invalid_argument(c.name + ": source out of range");
  }
  std::optional<SSSPResult> oracle;
  std::vector<BenchRecord> out;
  for (Engine e : c.engines) {
    PipelineConfig cfg = base;
    cfg.engine = e;
    if (c.gamma) cfg.gamma = *c.gamma;
    BenchRecord rec;
    rec.instance = c.name;
    rec.n = g.num_vertices();
    rec.m = g.num_edges();
    rec.L = g.neg_magnitude();
    rec.engine = std::string(engine_name(e));
    const ChosenParams cp = choose_params(g.num_vertices(), cfg);
    rec.gamma = cp.gamma;
    rec.r = cp.r;
    try {
      const PipelineResult res = solve_sssp(g, c.source_vertex, cfg);
      rec.times = res.times;
      rec.relaxations = res.sssp.stats.relaxations;
      rec.merge_ops = res.prep->merge_ops;
      if (!oracle) oracle = bellman_ford(g, c.source_vertex);
      rec.verdict = res.sssp.dist == oracle->dist ? "exact-match" : "mismatch";
    } catch (const Error&) {
      rec.verdict = "error";
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace sepshort
