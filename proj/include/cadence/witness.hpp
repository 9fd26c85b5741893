#pragma once

// Witness triples and their defining predicates, evaluated through a view so
// that compressed inputs are checked without expansion.

#include <string>

#include "cadence/error.hpp"
#include "cadence/string_view.hpp"

namespace cadence {

enum class WitnessKind { SubCadence, Cadence, LRCadence };

inline const char* to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::SubCadence: return "SubCadence";
    case WitnessKind::Cadence: return "Cadence";
    default: return "LRCadence";
  }
}

struct Witness {
  Index i = 0;
  Index d = 0;
  Index k = 3;
  char ch = 0;
  WitnessKind kind = WitnessKind::SubCadence;
  Interval L{};  // LRCadence only
  Interval R{};

  Index last() const { return i + (k - 1) * d; }

  friend bool operator==(const Witness&, const Witness&) = default;
};

inline std::string describe(const Witness& w) {
  return std::string(to_string(w.kind)) + "(" + std::to_string(w.i) + "," + std::to_string(w.d) + "," +
         std::to_string(w.k) + ")";
}

/// All k characters S[i], S[i+d], ... equal. Throws OutOfRange on a candidate
/// that leaves [1, n].
inline bool is_k_subcadence(const StringView& v, Index i, Index d, Index k) {
  if (i < 1 || d < 1 || k < 2 || (v.size() - i) / (k - 1) < d)
    throw Error(Errc::OutOfRange, "candidate (" + std::to_string(i) + "," + std::to_string(d) + "," +
                                      std::to_string(k) + ") leaves [1, " + std::to_string(v.size()) + "]");
  const char c = v.char_at(i);
  for (Index t = 1; t < k; ++t)
    if (v.char_at(i + t * d) != c) return false;
  return true;
}

inline bool is_maximal(Index n, Index i, Index d, Index k) {
  return i - d <= 0 && static_cast<Wide>(i) + static_cast<Wide>(k) * d > n;
}

inline bool is_k_cadence(const StringView& v, Index i, Index d, Index k) {
  return is_k_subcadence(v, i, d, k) && is_maximal(v.size(), i, d, k);
}

/// Re-checks every condition of w's kind, including its recorded character.
inline bool verify(const StringView& v, const Witness& w) {
  if (w.i < 1 || w.d < 1 || w.k < 2 || (v.size() - w.i) / (w.k - 1) < w.d) return false;
  if (!is_k_subcadence(v, w.i, w.d, w.k) || v.char_at(w.i) != w.ch) return false;
  switch (w.kind) {
    case WitnessKind::SubCadence: return true;
    case WitnessKind::Cadence: return is_maximal(v.size(), w.i, w.d, w.k);
    case WitnessKind::LRCadence: return w.L.contains(w.i) && w.R.contains(w.last());
  }
  return false;
}

/// Returns w if it verifies; an unverifiable witness is a bug, not an answer.
inline Witness certify(const StringView& v, const Witness& w) {
  if (!verify(v, w)) throw Error(Errc::InternalError, "produced witness " + describe(w) + " does not verify");
  return w;
}

}  // namespace cadence
