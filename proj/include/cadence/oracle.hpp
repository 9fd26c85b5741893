#pragma once

// Brute-force reference enumerations on plain strings. These define ground
// truth for the detectors and are deliberately naive.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cadence/cadence_detect.hpp"
#include "cadence/error.hpp"
#include "cadence/string_view.hpp"
#include "cadence/witness.hpp"

namespace cadence {

inline constexpr std::size_t kOracleMaxLength = std::size_t{1} << 14;

struct OracleReport {
  std::vector<Witness> witnesses;  // sorted by (i, d)
  std::array<std::size_t, kMaxAlphabet> by_char{};

  bool empty() const { return witnesses.empty(); }
  std::size_t size() const { return witnesses.size(); }

  bool contains(Index i, Index d) const {
    for (const Witness& w : witnesses)
      if (w.i == i && w.d == d) return true;
    return false;
  }
};

namespace detail {

inline void check_oracle_input(std::string_view s, Index k) {
  if (s.size() > kOracleMaxLength)
    throw Error(Errc::TooLarge, "oracle input has " + std::to_string(s.size()) + " characters", s.size());
  if (k < 2) throw Error(Errc::PreconditionViolated, "k must be at least 2");
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!is_alphabet_char(s[i]))
      throw Error(Errc::BadCharacter, "character outside {0,1,2} at position " + std::to_string(i + 1), i + 1);
}

// S[i], S[i+d], ..., S[i+(k-1)d] all equal (and equal to filter, if set).
inline bool equal_chars(std::string_view s, Index i, Index d, Index k, std::optional<char> filter) {
  const char c = s[static_cast<std::size_t>(i - 1)];
  if (filter && c != *filter) return false;
  for (Index t = 1; t < k; ++t)
    if (s[static_cast<std::size_t>(i + t * d - 1)] != c) return false;
  return true;
}

inline void add(OracleReport& r, std::string_view s, Index i, Index d, Index k, WitnessKind kind, Interval L = {},
                Interval R = {}) {
  const char c = s[static_cast<std::size_t>(i - 1)];
  r.witnesses.push_back(Witness{i, d, k, c, kind, L, R});
  ++r.by_char[c - '0'];
}

}  // namespace detail

inline OracleReport enum_subcadences(std::string_view s, Index k = 3, std::optional<char> filter = {}) {
  detail::check_oracle_input(s, k);
  const auto n = static_cast<Index>(s.size());
  OracleReport r;
  for (Index i = 1; i <= n; ++i)
    for (Index d = 1; i + (k - 1) * d <= n; ++d)
      if (detail::equal_chars(s, i, d, k, filter)) detail::add(r, s, i, d, k, WitnessKind::SubCadence);
  return r;
}

inline OracleReport enum_cadences(std::string_view s, Index k = 3, std::optional<char> filter = {}) {
  detail::check_oracle_input(s, k);
  const auto n = static_cast<Index>(s.size());
  OracleReport r;
  for (Index i = 1; i <= n; ++i) {
    // i - d <= 0, i + kd > n and i + (k-1)d <= n.
    const Index d_lo = std::max(i, (n - i) / k + 1);
    const Index d_hi = (n - i) / (k - 1);
    for (Index d = d_lo; d <= d_hi; ++d)
      if (detail::equal_chars(s, i, d, k, filter)) detail::add(r, s, i, d, k, WitnessKind::Cadence);
  }
  return r;
}

/// k-sub-cadences with first index in L and last index in R; L and R may
/// overlap. Intervals are clipped to [1, n].
inline OracleReport enum_lr(std::string_view s, Interval L, Interval R, Index k = 3, std::optional<char> filter = {}) {
  detail::check_oracle_input(s, k);
  const auto n = static_cast<Index>(s.size());
  OracleReport r;
  const Index lo = std::max<Index>(L.lo, 1);
  const Index hi = std::min<Index>(L.hi, n);
  for (Index i = lo; i <= hi; ++i)
    for (Index d = 1; i + (k - 1) * d <= n; ++d)
      if (R.contains(i + (k - 1) * d) && detail::equal_chars(s, i, d, k, filter))
        detail::add(r, s, i, d, k, WitnessKind::LRCadence, L, R);
  return r;
}

inline bool has_3subcadence(std::string_view s) {
  const auto n = static_cast<Index>(s.size());
  for (Index i = 1; i <= n; ++i)
    for (Index d = 1; i + 2 * d <= n; ++d)
      if (detail::equal_chars(s, i, d, 3, std::nullopt)) return true;
  return false;
}

/// Exhaustively confirms the (3, 2) van der Waerden bound: every binary string
/// of length 9 has a 3-sub-cadence, and the first length-8 string without one
/// is returned as the counterexample.
inline VdwEntry vdw_verify(int k, int sigma) {
  if (k != 3 || sigma != 2)
    throw Error(Errc::Unsupported, "only (k, sigma) = (3, 2) is verifiable by exhaustive search");
  auto bits = [](unsigned x, int len) {
    std::string s(static_cast<std::size_t>(len), '0');
    for (int b = 0; b < len; ++b)
      if ((x >> (len - 1 - b)) & 1U) s[static_cast<std::size_t>(b)] = '1';
    return s;
  };
  for (unsigned x = 0; x < (1U << 9); ++x)
    if (!has_3subcadence(bits(x, 9)))
      throw Error(Errc::InternalError, "length-9 string " + bits(x, 9) + " has no 3-sub-cadence");
  for (unsigned x = 0; x < (1U << 8); ++x) {
    const std::string s = bits(x, 8);
    if (!has_3subcadence(s)) return VdwEntry{3, 2, 9, s};
  }
  throw Error(Errc::InternalError, "no witness-free binary string of length 8");
}

/// Smallest 1-based l with P[l] = P'[l] = '1'.
inline std::optional<Index> common_one_index(std::string_view p, std::string_view pp) {
  const std::size_t m = std::min(p.size(), pp.size());
  for (std::size_t l = 0; l < m; ++l)
    if (p[l] == '1' && pp[l] == '1') return static_cast<Index>(l + 1);
  return std::nullopt;
}

}  // namespace cadence
