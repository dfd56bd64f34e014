#pragma once

#include <cstdint>
#include <limits>

#include "sepshort/errors.hpp"

namespace sepshort {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr Vertex kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;

// Distances and lengths share one 64-bit signed type. Input lengths are
// capped at 2^31-1 in magnitude, so any simple-path distance (|d| <= n*L)
// fits with ample headroom; sums are still overflow-checked.
using Weight = std::int64_t;

inline constexpr Weight kInf = std::numeric_limits<Weight>::max();
inline constexpr Weight kMaxInputLength = (Weight{1} << 31) - 1;

constexpr bool is_inf(Weight w) noexcept { return w == kInf; }

/// Saturating-at-infinity addition. Finite overflow throws OverflowError.
inline Weight add(Weight a, Weight b) {
  if (a == kInf || b == kInf) return kInf;
  Weight out;
  if (__builtin_add_overflow(a, b, &out) || out == kInf) {
    throw OverflowError("distance arithmetic overflow");
  }
  return out;
}

inline Weight sub(Weight a, Weight b) {
  if (a == kInf) return kInf;
  Weight out;
  if (__builtin_sub_overflow(a, b, &out) || out == kInf) {
    throw OverflowError("distance arithmetic overflow");
  }
  return out;
}

}  // namespace sepshort
