#pragma once

// L-R-3-cadence detection on binary strings: a 3-sub-cadence whose first index
// lies in L and whose last index lies in R.
//
// Both endpoints of a 3-sub-cadence share a parity, so everything runs once per
// parity p on the parity-p subsequences of L and R. Their run shapes decide
// the method:
//   - an "ab" pattern in L and a "ba" pattern in R always yield a witness
//     (midpoint probe, lr2_witness);
//   - two uniform runs of the same character reduce to one midpoint interval
//     (lr01_check);
//   - a uniform side against a complex side is solved by a shrinking loop over
//     R (lr0_step), mirrored when the complex side is L.
// Overlapping intervals split into the overlap M and the disjoint remainders;
// nine consecutive characters always contain a 3-sub-cadence, so M-M pairs
// need at most a constant brute force.

#include <array>
#include <optional>
#include <string>

#include "cadence/error.hpp"
#include "cadence/index_math.hpp"
#include "cadence/string_view.hpp"
#include "cadence/witness.hpp"

namespace cadence {

struct LrState {
  Parity p = Parity::Even;
  char c = '0';
  Index l_min = 0, l_max = 0;
  Index r_min = 0, r_max = 0;
  std::optional<Index> r0, m0;  // probes of the last step
};

struct StepOutcome {
  enum class Kind { Found, NoCadence, Shrunk };

  Kind kind = Kind::NoCadence;
  Witness witness{};
  Index r_min = 0;  // Shrunk: new lower end of R
  std::optional<Index> r0, m0;

  static StepOutcome found(Witness w, std::optional<Index> r0, std::optional<Index> m0) {
    return StepOutcome{Kind::Found, w, 0, r0, m0};
  }
  static StepOutcome none(std::optional<Index> r0 = {}, std::optional<Index> m0 = {}) {
    return StepOutcome{Kind::NoCadence, {}, 0, r0, m0};
  }
  static StepOutcome shrunk(Index r, std::optional<Index> r0, std::optional<Index> m0) {
    return StepOutcome{Kind::Shrunk, {}, r, r0, m0};
  }
};

namespace detail {

inline Witness triple(const StringView& v, Index i, Index j) {
  return Witness{i, (j - i) / 2, 3, v.char_at(i), WitnessKind::SubCadence, {}, {}};
}

inline Witness as_lr(Witness w, Interval L, Interval R) {
  w.kind = WitnessKind::LRCadence;
  w.L = L;
  w.R = R;
  return w;
}

// Maps a witness found on v.reversed() back to v's indices.
inline Witness unmirror(const StringView& v, Witness w) {
  w.i = v.mirror(w.last());
  return w;
}

inline void require_binary(const StringView& v) {
  if (!v.is_binary()) throw Error(Errc::AlphabetMismatch, "L-R detection needs a binary view");
}

inline void require_in_range(const StringView& v, Interval r, const char* name) {
  if (!r.empty() && (r.lo < 1 || r.hi > v.size()))
    throw Error(Errc::IntervalError, std::string(name) + " = [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) +
                                         "] leaves [1, " + std::to_string(v.size()) + "]");
}

inline void count_step(const StringView& v) {
  if (v.stats()) ++v.stats()->steps;
}

}  // namespace detail

/// Given S[i] = S[j] != S[i+2] = S[j-2], one of (i, j) and (i+2, j-2) is a
/// 3-sub-cadence; the midpoint decides which.
inline Witness lr2_witness(const StringView& v, Index i, Index j) {
  detail::require_binary(v);
  if (i < 1 || j > v.size() || ((j - i) & 1) || i + 2 >= j - 2)
    throw Error(Errc::PreconditionViolated,
                "lr2_witness needs i = j (mod 2) and i + 2 < j - 2, got i=" + std::to_string(i) + ", j=" + std::to_string(j));
  const char a = v.char_at(i);
  const char b = v.char_at(i + 2);
  if (a == b || v.char_at(j) != a || v.char_at(j - 2) != b)
    throw Error(Errc::PreconditionViolated, "lr2_witness needs S[i] = S[j] != S[i+2] = S[j-2]");
  const Index m = mid(i, j);
  const Witness w = v.char_at(m) == a ? detail::triple(v, i, j) : detail::triple(v, i + 2, j - 2);
  return certify(v, w);
}

/// Both runs carry c at every parity-p index. A witness exists iff some
/// midpoint between them carries c.
inline std::optional<Witness> lr01_check(const StringView& v, Parity p, char c, Interval l_run, Interval r_run) {
  l_run = restrict_to(l_run, p);
  r_run = restrict_to(r_run, p);
  if (l_run.empty() || r_run.empty()) return std::nullopt;
  if (l_run.hi >= r_run.lo) throw Error(Errc::PreconditionViolated, "lr01_check needs the L run before the R run");
  if (!v.is_uniform(c, p, l_run) || !v.is_uniform(c, p, r_run))
    throw Error(Errc::PreconditionViolated, "lr01_check runs are not uniform");
  const auto m = v.first_in(c, Parity::Both, Interval{mid(l_run.lo, r_run.lo), mid(l_run.hi, r_run.hi)});
  if (!m) return std::nullopt;
  const Index i = std::max<Index>(l_run.lo, static_cast<Index>(2 * Wide{*m} - r_run.hi));
  const Index j = static_cast<Index>(2 * Wide{*m} - i);
  return certify(v, detail::triple(v, i, j));
}

/// One pass of the shrinking loop for a uniform L run against an arbitrary R.
/// Either finds a witness, proves there is none, or discards a prefix of R
/// that provably holds no last index.
inline StepOutcome lr0_step(const StringView& v, const LrState& st) {
  const int par = parity_value(st.p);
  if (st.p == Parity::Both || ((st.l_min - par) & 1) || ((st.l_max - par) & 1) || ((st.r_min - par) & 1) ||
      ((st.r_max - par) & 1) || st.l_min > st.l_max || st.l_min < 1 || st.l_max >= st.r_min || st.r_max > v.size())
    throw Error(Errc::PreconditionViolated, "lr0_step state is malformed");
  if (!v.is_uniform(st.c, st.p, Interval{st.l_min, st.l_max}))
    throw Error(Errc::PreconditionViolated, "lr0_step needs a uniform L run");
  detail::count_step(v);

  const auto r0 = v.first_in(st.c, st.p, Interval{st.r_min, st.r_max});
  if (!r0) return StepOutcome::none();

  if (const auto m = v.first_in(st.c, Parity::Both, Interval{mid(st.l_min, *r0), mid(st.l_max, *r0)}))
    return StepOutcome::found(certify(v, detail::triple(v, 2 * *m - *r0, *r0)), r0, {});

  const auto m0 = v.first_in(st.c, Parity::Both, Interval{mid(st.l_max, *r0) + 1, mid(st.l_max, st.r_max)});
  if (!m0) return StepOutcome::none(r0);

  const Index two_m = 2 * *m0;
  const Interval window{std::max(two_m - st.l_max, st.r_min), std::min(two_m - st.l_min, st.r_max)};
  if (const auto r = v.first_in(st.c, st.p, window))
    return StepOutcome::found(certify(v, detail::triple(v, two_m - *r, *r)), r0, m0);

  return StepOutcome::shrunk(static_cast<Index>(ceil_par(two_m - st.l_min + 1, par)), r0, m0);
}

/// Runs lr0_step until it finds a witness or R is exhausted.
inline std::optional<Witness> lr0_search(const StringView& v, LrState st) {
  while (st.r_min <= st.r_max) {
    const StepOutcome out = lr0_step(v, st);
    if (out.kind == StepOutcome::Kind::Found) return out.witness;
    if (out.kind == StepOutcome::Kind::NoCadence) return std::nullopt;
    if (out.r_min <= st.r_min) throw Error(Errc::InternalError, "lr0_step did not shrink R");
    st.r_min = out.r_min;
    st.r0 = out.r0;
    st.m0 = out.m0;
  }
  return std::nullopt;
}

namespace detail {

inline std::optional<Witness> lr_at_parity(const StringView& v, Parity p, Interval L, Interval R) {
  const RunShape sl = shape(v, p, L);
  const RunShape sr = shape(v, p, R);
  if (sl.kind == RunShape::Kind::Empty || sr.kind == RunShape::Kind::Empty) return std::nullopt;

  for (const auto& [a, b] : std::array<std::pair<char, char>, 2>{{{'0', '1'}, {'1', '0'}}}) {
    const auto x = sl.pattern(a, b);
    const auto y = sr.pattern(b, a);
    if (x && y) return lr2_witness(v, *x, *y + 2);
  }

  const Interval lp{sl.first_pos, sl.last_pos};
  const Interval rp{sr.first_pos, sr.last_pos};
  if (sl.kind == RunShape::Kind::AllOf) {
    const char c = sl.first_char;
    if (sr.kind == RunShape::Kind::Complex) return lr0_search(v, LrState{p, c, lp.lo, lp.hi, rp.lo, rp.hi, {}, {}});
    return lr01_check(v, p, c, lp, sr.run_of(c));
  }
  if (sr.kind == RunShape::Kind::AllOf) {
    const char c = sr.first_char;
    if (sl.kind == RunShape::Kind::Complex) {
      const StringView rv = v.reversed();
      const Interval ml = v.mirror(rp);
      const Interval mr = v.mirror(lp);
      const auto w = lr0_search(rv, LrState{v.mirror(p), c, ml.lo, ml.hi, mr.lo, mr.hi, {}, {}});
      if (!w) return std::nullopt;
      return unmirror(v, *w);
    }
    return lr01_check(v, p, c, sl.run_of(c), rp);
  }
  // Two runs on each side, starting with the same character.
  for (const char c : {sl.first_char, other_char(sl.first_char)})
    if (auto w = lr01_check(v, p, c, sl.run_of(c), sr.run_of(c))) return w;
  return std::nullopt;
}

}  // namespace detail

/// L-R-3-cadence for L entirely before R.
inline std::optional<Witness> detect_lr_disjoint(const StringView& v, Interval L, Interval R) {
  detail::require_binary(v);
  detail::require_in_range(v, L, "L");
  detail::require_in_range(v, R, "R");
  if (L.empty() || R.empty()) return std::nullopt;
  if (L.hi >= R.lo) throw Error(Errc::IntervalError, "L must end before R starts; use detect_lr for overlaps");
  for (const Parity p : {Parity::Even, Parity::Odd})
    if (auto w = detail::lr_at_parity(v, p, L, R)) return certify(v, detail::as_lr(*w, L, R));
  return std::nullopt;
}

/// L-R-3-cadence for intervals that may overlap, with min L <= min R and
/// max L <= max R.
inline std::optional<Witness> detect_lr(const StringView& v, Interval L, Interval R) {
  detail::require_binary(v);
  detail::require_in_range(v, L, "L");
  detail::require_in_range(v, R, "R");
  if (L.empty() || R.empty()) return std::nullopt;
  if (L.lo > R.lo || L.hi > R.hi) throw Error(Errc::IntervalError, "detect_lr needs min L <= min R and max L <= max R");
  if (L.hi < R.lo) return detect_lr_disjoint(v, L, R);

  const Interval M{R.lo, L.hi};
  const Index span = std::min<Index>(M.size(), 9);
  for (Index i = M.lo; i < M.lo + span; ++i)
    for (Index d = 1; i + 2 * d < M.lo + span; ++d)
      if (v.char_at(i) == v.char_at(i + d) && v.char_at(i) == v.char_at(i + 2 * d))
        return certify(v, detail::as_lr(Witness{i, d, 3, v.char_at(i), WitnessKind::SubCadence, {}, {}}, L, R));
  if (span == 9) throw Error(Errc::InternalError, "nine characters without a 3-sub-cadence");

  const Interval l_only{L.lo, R.lo - 1};
  const Interval r_only{L.hi + 1, R.hi};
  if (!l_only.empty())
    if (auto w = detect_lr_disjoint(v, l_only, R)) return certify(v, detail::as_lr(*w, L, R));
  if (!r_only.empty())
    if (auto w = detect_lr_disjoint(v, L, r_only)) return certify(v, detail::as_lr(*w, L, R));
  return std::nullopt;
}

}  // namespace cadence
