#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sepshort/pipeline.hpp"

namespace sepshort {

/// One corpus line: `NAME SOURCE [engines=E1,E2] [gamma=G] [source=S]`.
/// SOURCE is a generator spec ("grid:100x100:negpot=0..9/20") or a path to a
/// .gr file, resolved relative to the corpus file's directory.
struct BenchCase {
  std::string name;
  std::string source;
  bool is_file = false;
  std::vector<Engine> engines{Engine::kScaling};
  std::optional<double> gamma;
  Vertex source_vertex = 0;
};

std::vector<BenchCase> parse_corpus(std::string_view text, const std::string& base_dir = ".");

struct BenchRecord {
  std::string instance;
  std::size_t n = 0;
  std::size_t m = 0;
  Weight L = 0;
  double gamma = 0.0;
  std::size_t r = 0;
  std::string engine;
  StageTimes times;
  std::uint64_t relaxations = 0;
  std::uint64_t merge_ops = 0;
  std::string verdict;  // exact-match, mismatch or error
};

/// Schema line and column header, each newline-terminated.
std::string bench_csv_header();
std::string bench_csv_row(const BenchRecord& r);

/// Solves the case once per engine and checks every distance against
/// Bellman-Ford.
std::vector<BenchRecord> run_bench_case(const BenchCase& c, const PipelineConfig& base,
                                        std::uint64_t seed);

}  // namespace sepshort
