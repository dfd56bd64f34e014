#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sepshort/errors.hpp"
#include "sepshort/graph.hpp"
#include "sepshort/report.hpp"

namespace sepshort {

enum class Strategy { kExact, kBfsLevel, kLocalSearch };

Strategy parse_strategy(std::string_view name);
std::string_view strategy_name(Strategy s);

/// Size bound c * n^e on the separator and the balance target alpha.
struct SeparatorBudget {
  double c_sep = 4.0;
  double e_sep = 0.5;
  double alpha = 2.0 / 3.0;

  double f_bound(std::size_t n) const;
  void validate() const;
};

struct SeparatorOptions {
  Strategy strategy = Strategy::kBfsLevel;
  SeparatorBudget budget;
  std::uint64_t seed = 0;
  std::size_t exact_cap = 16;

  /// "strategy=bfs-level,c=4,e=0.5,alpha=0.667"; omitted keys keep defaults.
  static SeparatorOptions parse(std::string_view text);
};

/// A separation (A, B) of a graph; all three vertex lists are sorted.
struct Separation {
  std::vector<Vertex> a;
  std::vector<Vertex> b;
  std::vector<Vertex> separator;
  /// max(w(A\B), w(B\A)) / w(G), 0 for zero total weight.
  double balance_alpha = 0.0;
};

/// No separation within the size budget was found. Carries the best one.
class BudgetUnmet : public Error {
 public:
  BudgetUnmet(Separation best, double bound)
      : Error("separator of size " + std::to_string(best.separator.size()) +
              " exceeds budget " + std::to_string(bound)),
        best_(std::move(best)) {}
  const Separation& best() const noexcept { return best_; }

  /// Global ids of the vertices of the subgraph being split, when known.
  const std::vector<Vertex>& region() const noexcept { return region_; }
  void set_region(std::vector<Vertex> verts) { region_ = std::move(verts); }

 private:
  Separation best_;
  std::vector<Vertex> region_;
};

/// Separation of the underlying undirected graph of g that is balanced to
/// budget.alpha under w and, unless BudgetUnmet is thrown, has at most
/// budget.f_bound(n) separator vertices. Ties prefer the smaller separator,
/// then the better balance, then the lexicographically smaller separator.
Separation separate(const DiGraph& g, const VertexWeighting& w, const SeparatorOptions& opts);

/// Checks A u B = V, separator = A n B, no undirected edge between A\B and
/// B\A, and both sides weigh at most alpha * w(G) (alpha defaults to the
/// separation's reported balance).
Report verify_separation(const DiGraph& g, const VertexWeighting& w, const Separation& s,
                         std::optional<double> alpha = std::nullopt);

/// X plus three disjoint parts; no edge joins two different parts.
struct ThreeWaySplit {
  std::vector<Vertex> separator;
  std::array<std::vector<Vertex>, 3> parts;
};

/// Two stacked separations of the subgraph induced by `region`: first on
/// uniform weights, then, if one side holds more than half of `boundary`,
/// that side again on boundary-indicator weights. Each part ends up with at
/// most alpha of the region and alpha of the boundary.
ThreeWaySplit double_balanced_split(const DiGraph& g, std::span<const Vertex> region,
                                    std::span<const Vertex> boundary,
                                    const SeparatorOptions& opts);

}  // namespace sepshort
