#pragma once

#include <string>
#include <vector>

namespace sepshort {

/// Outcome of an invariant checker. Empty failure list means pass.
struct Report {
  std::vector<std::string> failures;

  bool ok() const noexcept { return failures.empty(); }
  void fail(std::string what) { failures.push_back(std::move(what)); }
  void merge(const Report& other) {
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  }
};

}  // namespace sepshort
