#pragma once

// Shared test inputs: the two 48-character trace strings, exhaustive and
// random string generators, and random grammars.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cadence/slp.hpp"

namespace cadence::testing {

// Builds a 48-character string from three rows: the even
// positions 2..16, all of 17..32, and the even positions 34..48. Odd
// positions outside the middle third are '1'.
inline std::string from_rows(const std::string& head_even, const std::string& middle, const std::string& tail_even) {
  std::string s(48, '1');
  for (int k = 0; k < 8; ++k) {
    s[static_cast<std::size_t>(2 * k + 1)] = head_even[static_cast<std::size_t>(k)];
    s[static_cast<std::size_t>(33 + 2 * k)] = tail_even[static_cast<std::size_t>(k)];
  }
  for (int k = 0; k < 16; ++k) s[static_cast<std::size_t>(16 + k)] = middle[static_cast<std::size_t>(k)];
  return s;
}

// The shrinking-loop trace for a uniform L run against a complex R.
inline std::string lr_trace_string() { return from_rows("00000110", "1111110100111000", "01111101"); }

// The shrinking-loop trace for the full-string detector.
inline std::string cadence_trace_string() { return from_rows("00000110", "1110110100111000", "01101101"); }

inline std::string bits(std::uint64_t x, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int b = 0; b < n; ++b)
    if ((x >> b) & 1U) s[static_cast<std::size_t>(b)] = '1';
  return s;
}

inline std::string random_binary(std::mt19937_64& rng, std::size_t n, double p_one = 0.5) {
  std::bernoulli_distribution one(p_one);
  std::string s(n, '0');
  for (char& c : s)
    if (one(rng)) c = '1';
  return s;
}

// A string whose first third is mostly '0' and last third mostly '1', with
// up to flip_rate of each flipped, optionally complemented or reversed. Every
// 3-cadence starts in the first third and ends in the last, so these strings
// are often cadence-free and make the detector run to completion.
inline std::string near_cadence_free(std::mt19937_64& rng, std::size_t n, double flip_rate) {
  std::uniform_real_distribution<double> u(0, 1);
  const std::size_t k = n / 3;
  std::string s = random_binary(rng, k, u(rng) * flip_rate) + random_binary(rng, n - 2 * k, u(rng)) +
                  random_binary(rng, k, 1 - u(rng) * flip_rate);
  if (rng() & 1U)
    for (char& c : s) c = c == '0' ? '1' : '0';
  if (rng() % 3 == 0) s = std::string(s.rbegin(), s.rend());
  return s;
}

// Random grammar with the given rule count over {0,1} whose expansion stays
// at most max_len. Pairs favour recent rules so lengths grow quickly.
inline Slp random_slp(std::mt19937_64& rng, std::size_t rules, Length max_len) {
  std::vector<Rule> r{Rule::terminal('0'), Rule::terminal('1')};
  std::vector<Length> len{1, 1};
  if (rules <= 1) return Slp({Rule::terminal(rng() & 1U ? '1' : '0')});
  auto pick = [&] {
    const std::size_t m = r.size();
    switch (rng() % 4) {
      case 0: case 1: return static_cast<std::uint32_t>(m - 1);
      case 2: return static_cast<std::uint32_t>(m - 2);
      default: return static_cast<std::uint32_t>(rng() % m);
    }
  };
  while (r.size() < rules) {
    const auto a = pick();
    const auto b = pick();
    if (len[a] + len[b] > max_len) {
      // Extend the newest rule by one character if it fits, otherwise
      // restart small; either way generation terminates.
      const auto last = static_cast<std::uint32_t>(r.size() - 1);
      const std::uint32_t t = rng() & 1U;
      if (len[last] + 1 <= max_len) {
        r.push_back(Rule::pair(last, t));
        len.push_back(len[last] + 1);
      } else {
        r.push_back(Rule::pair(0, 1));
        len.push_back(2);
      }
      continue;
    }
    r.push_back(Rule::pair(a, b));
    len.push_back(len[a] + len[b]);
  }
  return Slp(std::move(r));
}

}  // namespace cadence::testing
