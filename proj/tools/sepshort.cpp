// Command-line front end: solve, divide, verify, gen, bench.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 negative cycle, 3 separator
// budget unmet, 4 verification failure, 5 oracle mismatch.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "sepshort/bench.hpp"
#include "sepshort/delta_apsp.hpp"
#include "sepshort/errors.hpp"
#include "sepshort/generators.hpp"
#include "sepshort/pipeline.hpp"

namespace {

using namespace sepshort;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitNegativeCycle = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerify = 4;
constexpr int kExitMismatch = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void print_cycle(const DiGraph& g, const NegativeCycle& c) {
  Weight total = 0;
  for (EdgeId e : c.edges()) total += g.edge(e).length;
  std::cout << "negative cycle:";
  for (Vertex v : c.vertices()) std::cout << ' ' << v + 1;
  std::cout << " total " << total << "\n";
}

struct SolveArgs {
  std::string input;
  long source = 1;
  std::string engine;
  std::optional<double> gamma;
  std::optional<std::size_t> r;
  bool oracle = false;
  std::optional<long> path;
  std::string config;
};

int cmd_solve(const SolveArgs& a) {
  const DiGraph g = load_dimacs_file(a.input);
  PipelineConfig cfg;
  if (!a.config.empty()) cfg = PipelineConfig::parse(read_file(a.config));
  if (!a.engine.empty()) cfg.engine = parse_engine(a.engine);
  if (a.gamma) cfg.gamma = *a.gamma;
  if (a.r) cfg.r_override = *a.r;
  if (a.source < 1 || static_cast<std::size_t>(a.source) > g.num_vertices()) {
    std::cerr << "source out of range\n";
    return kExitIo;
  }
  const Vertex s = static_cast<Vertex>(a.source - 1);
  PipelineResult res;
  try {
    res = solve_sssp(g, s, cfg);
  } catch (const NegativeCycle& c) {
    print_cycle(g, c);
    return kExitNegativeCycle;
  }
  std::string out;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    out += "v " + std::to_string(v + 1) + ' ';
    out += res.sssp.dist[v] == kInf ? std::string("UNREACHABLE") : std::to_string(res.sssp.dist[v]);
    out += '\n';
  }
  std::cout << out;
  if (a.path) {
    const long pv = *a.path;
    if (pv < 1 || static_cast<std::size_t>(pv) > g.num_vertices()) {
      std::cerr << "path vertex out of range\n";
      return kExitIo;
    }
    try {
      const auto edges = extract_path(g, res, static_cast<Vertex>(pv - 1));
      std::cout << "path " << pv << " length " << path_length(g, edges) << ":" << ' ' << s + 1;
      for (EdgeId e : edges) std::cout << ' ' << g.edge(e).head + 1;
      std::cout << "\n";
    } catch (const Unreachable&) {
      std::cout << "path " << pv << " UNREACHABLE\n";
    }
  }
  if (a.oracle) {
    const SSSPResult o = bellman_ford(g, s);
    const bool same = o.dist == res.sssp.dist;
    std::cout << "oracle " << (same ? "exact-match" : "mismatch") << "\n";
    if (!same) return kExitMismatch;
  }
  return kExitOk;
}

struct DivideArgs {
  std::string input;
  std::optional<std::size_t> r;
  std::optional<double> gamma;
  std::string strategy = "bfs-level";
  std::string out;
};

int cmd_divide(const DivideArgs& a) {
  const DiGraph g = load_dimacs_file(a.input);
  PipelineConfig cfg;
  if (a.gamma) cfg.gamma = *a.gamma;
  if (a.r) cfg.r_override = *a.r;
  cfg.division_strategy = parse_strategy(a.strategy);
  cfg.validate();
  const ChosenParams cp = choose_params(g.num_vertices(), cfg);
  const Division d = build_division(g, cfg.division_params(cp.r));
  write_file(a.out, division_to_jsonl(d));
  std::cout << "regions " << d.regions.size() << " r " << d.r << "\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string input;
  std::string division;
  std::string separator;
  bool skeleton = false;
  bool full = false;
};

int report(const std::string& what, const Report& r) {
  if (r.ok()) {
    std::cout << what << ": ok\n";
    return 0;
  }
  for (const auto& f : r.failures) std::cout << what << ": FAIL " << f << "\n";
  return 1;
}

int cmd_verify(const VerifyArgs& a) {
  const DiGraph g = load_dimacs_file(a.input);
  int failed = 0;
  if (!a.division.empty()) {
    const Division d = division_from_jsonl(g, read_file(a.division));
    failed += report("division", verify_division(g, d));
  }
  if (!a.separator.empty()) {
    const SeparatorOptions opts = SeparatorOptions::parse(a.separator);
    const auto w = VertexWeighting::uniform(g.num_vertices());
    const Separation s = separate(g, w, opts);
    std::cout << "separator size " << s.separator.size() << " balance " << s.balance_alpha << "\n";
    failed += report("separation", verify_separation(g, w, s, opts.budget.alpha));
  }
  if (a.skeleton) {
    PipelineConfig cfg;
    const ChosenParams cp = choose_params(g.num_vertices(), cfg);
    const Division d = build_division(g, cfg.division_params(cp.r));
    SkeletonParams sk = cfg.skeleton_params();
    sk.check_deltas = true;
    Report r;
    for (const Region& reg : d.regions) {
      const SkeletonPair sp = build_skeleton(reg, sk);
      r.merge(sp.delta_report);
      const FloydWarshallResult fw = floyd_warshall(reg.local_graph, reg.vertices);
      if (fw.matrix.restrict_to(reg.boundary).dist != sp.H.dist) {
        r.fail("region " + std::to_string(reg.id) + ": boundary clique differs from Floyd-Warshall");
      }
    }
    failed += report("skeleton", r);
  }
  if (a.full) {
    const FloydWarshallResult fw = floyd_warshall(g);
    Report r;
    PipelineConfig cfg;
    for (std::size_t s = 0; s < g.num_vertices(); ++s) {
      const PipelineResult res = solve_sssp(g, static_cast<Vertex>(s), cfg);
      for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        if (res.sssp.dist[v] != fw.matrix.at(s, v)) {
          r.fail("distance " + std::to_string(s + 1) + " -> " + std::to_string(v + 1) + " differs");
        }
      }
    }
    failed += report("distances", r);
  }
  return failed == 0 ? kExitOk : kExitVerify;
}

int cmd_gen(const std::string& spec, const std::string& out, std::optional<long> plant) {
  DiGraph g = generate(spec, env_seed());
  if (plant) {
    if (*plant < 1 || static_cast<std::size_t>(*plant) > g.num_vertices()) {
      throw std::invalid_argument("plant vertex out of range");
    }
    g = plant_negative_cycle(g, static_cast<Vertex>(*plant - 1), env_seed());
  }
  write_file(out, save_dimacs(g));
  return kExitOk;
}

int cmd_bench(const std::string& corpus, const std::string& out) {
  if (!std::filesystem::exists(corpus)) {
    std::cerr << "corpus file not found: " << corpus << "\n";
    return kExitIo;
  }
  const auto dir = std::filesystem::path(corpus).parent_path().string();
  const auto cases = parse_corpus(read_file(corpus), dir.empty() ? "." : dir);
  std::string csv = bench_csv_header();
  bool all_exact = true;
  const PipelineConfig cfg;
  for (const BenchCase& c : cases) {
    for (const BenchRecord& r : run_bench_case(c, cfg, env_seed())) {
      csv += bench_csv_row(r);
      all_exact = all_exact && r.verdict == "exact-match";
      std::cerr << r.instance << ' ' << r.engine << ' ' << r.verdict << ' ' << r.times.total_ms
                << " ms\n";
    }
  }
  write_file(out, csv);
  return all_exact ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shortest paths with negative lengths via separators"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "distances from one source");
  s->add_option("--input", solve.input, "DIMACS .gr file")->required();
  s->add_option("--source", solve.source, "source vertex (1-based)")->required();
  s->add_option("--engine", solve.engine, "bf, scaling or dijkstra");
  s->add_option("--gamma", solve.gamma);
  s->add_option("--r", solve.r, "region size");
  s->add_flag("--oracle", solve.oracle, "compare against Bellman-Ford");
  s->add_option("--path", solve.path, "print a shortest path to this vertex");
  s->add_option("--config", solve.config, "key=value configuration file");

  DivideArgs divide;
  auto* d = app.add_subcommand("divide", "write a division as JSON lines");
  d->add_option("--input", divide.input)->required();
  d->add_option("--r", divide.r);
  d->add_option("--gamma", divide.gamma);
  d->add_option("--strategy", divide.strategy);
  d->add_option("--out", divide.out)->required();

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "check invariants");
  v->add_option("--input", verify.input)->required();
  v->add_option("--division", verify.division, "division file to check");
  v->add_option("--separator", verify.separator, "separator options to run and check");
  v->add_flag("--skeleton", verify.skeleton, "check boundary cliques and merges");
  v->add_flag("--full", verify.full, "all-pairs check against Floyd-Warshall");

  std::string gen_spec, gen_out;
  std::optional<long> gen_plant;
  auto* gcmd = app.add_subcommand("gen", "generate a graph");
  gcmd->add_option("spec", gen_spec, "e.g. grid:10x10:negpot=0..9/5")->required();
  gcmd->add_option("--out", gen_out)->required();
  gcmd->add_option("--plant-cycle", gen_plant, "add a negative cycle reachable from this vertex");

  std::string corpus, bench_out;
  auto* b = app.add_subcommand("bench", "run a corpus and write CSV");
  b->add_option("--corpus", corpus)->required();
  b->add_option("--out", bench_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (s->parsed()) return cmd_solve(solve);
    if (d->parsed()) return cmd_divide(divide);
    if (v->parsed()) return cmd_verify(verify);
    if (gcmd->parsed()) return cmd_gen(gen_spec, gen_out, gen_plant);
    if (b->parsed()) return cmd_bench(corpus, bench_out);
  } catch (const BudgetUnmet& e) {
    std::cerr << "budget unmet: " << e.what() << "\n";
    return kExitBudget;
  } catch (const NegativeCycle& e) {
    std::cerr << "negative cycle\n";
    return kExitNegativeCycle;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitIo;
}
