#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sepshort {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class InvalidDelta : public Error {
 public:
  using Error::Error;
};

class Unreachable : public Error {
 public:
  using Error::Error;
};

class NegativeEdge : public Error {
 public:
  explicit NegativeEdge(std::int32_t edge)
      : Error("negative edge " + std::to_string(edge)), edge_(edge) {}
  std::int32_t edge() const noexcept { return edge_; }

 private:
  std::int32_t edge_;
};

/// A negative cycle. `vertices[i] -> vertices[i+1]` is traversed by
/// `edges[i]`, and the last edge closes the cycle. `edges` may be empty when
/// only a witness vertex is known.
class NegativeCycle : public Error {
 public:
  NegativeCycle(std::vector<std::int32_t> vertices,
                std::vector<std::int32_t> edges)
      : Error("negative cycle"),
        vertices_(std::move(vertices)),
        edges_(std::move(edges)) {}

  const std::vector<std::int32_t>& vertices() const noexcept {
    return vertices_;
  }
  const std::vector<std::int32_t>& edges() const noexcept { return edges_; }

 private:
  std::vector<std::int32_t> vertices_;
  std::vector<std::int32_t> edges_;
};

}  // namespace sepshort
