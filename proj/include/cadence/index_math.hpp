#pragma once

// Exact integer helpers for 1-based index arithmetic. Bounds such as 3j - 2n
// overflow 64 bits for long compressed strings, so they are evaluated in
// 128-bit arithmetic and only narrowed once clamped into [0, n + 2].

#include <algorithm>
#include <cstdint>

namespace cadence {

using Index = std::int64_t;
__extension__ typedef __int128 Wide;

constexpr Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

constexpr Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

/// Smallest value >= x congruent to par (mod 2).
constexpr Wide ceil_par(Wide x, int par) { return ((x - par) % 2 == 0) ? x : x + 1; }

/// Largest value <= x congruent to par (mod 2).
constexpr Wide floor_par(Wide x, int par) { return ((x - par) % 2 == 0) ? x : x - 1; }

constexpr Index narrow(Wide x, Index lo, Index hi) {
  return static_cast<Index>(std::clamp<Wide>(x, lo, hi));
}

/// Midpoint of two indices of equal parity.
constexpr Index mid(Index a, Index b) { return static_cast<Index>((Wide{a} + b) / 2); }

}  // namespace cadence
