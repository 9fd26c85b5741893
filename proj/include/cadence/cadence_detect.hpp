#pragma once

// Full-string 3-cadence detection for binary strings, plain or compressed.
//
// A pair (i, j) of equal-parity indices with S[i] = S[(i+j)/2] = S[j] is a
// 3-cadence iff j >= 3i and 3j - i > 2n. Shrinking i or growing j keeps both
// inequalities, so first indices live in [1, n/3] and last indices in
// (2n/3, n].
//
// If any 3-cadence exists, one exists that starts in the first or second run
// of the parity-p subsequence of [1, n/3] or ends in one of the last two runs
// near n; the latter are the former on the reversed string. Each such run,
// uniform in c, becomes a RunContext and is searched by a shrinking loop over
// R (cor3_step). In compressed mode the loop is capped at r_stop: beyond it
// every first index up to the end of the run is maximal, so the remaining
// tail is a plain L-R question answered with constant many queries.

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cadence/error.hpp"
#include "cadence/index_math.hpp"
#include "cadence/lr_detect.hpp"
#include "cadence/string_view.hpp"
#include "cadence/witness.hpp"

namespace cadence {

enum class Mode { Auto, Uncompressed, Compressed };

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::Uncompressed: return "uncompressed";
    case Mode::Compressed: return "compressed";
    default: return "auto";
  }
}

struct RunContext {
  Parity p = Parity::Even;
  int run_index = 1;
  char c = '0';
  Index l_min = 0, l_max = 0;
  Index n = 0;
  Index a = 0;       // first parity-p index after the run
  Index r_stop = 0;  // loop handles last indices below this; n + 2 when uncapped
  Mode mode = Mode::Uncompressed;
};

/// Known van der Waerden bound: every string of length m over sigma
/// characters has a k-sub-cadence, and some string of length m - 1 has none.
struct VdwEntry {
  int k = 0;
  int sigma = 0;
  int m = 0;
  std::string counterexample;  // witness-free string of length m - 1
};

inline const VdwEntry kVdw32{3, 2, 9, "00110011"};

/// Smallest index r of parity p such that every pair (i, r) with i <= a,
/// i of parity p, satisfies both maximality inequalities. May exceed n.
inline Index r1_threshold(Index a, Index n, Parity p) {
  const Wide lo = std::max<Wide>(3 * Wide{a}, floor_div(2 * Wide{n} + a, 3) + 1);
  return static_cast<Index>(ceil_par(lo, parity_value(p)));
}

/// Largest first index usable with last index r0: min(l_max, largest
/// parity-p value <= r0/3, largest parity-p value < 3 r0 - 2n). May fall
/// below l_min (no usable first index) or below 1.
inline Index lem30_bounds(Index l_min, Index l_max, Index n, Index r0, Parity p = Parity::Even) {
  (void)l_min;
  const int par = parity_value(p);
  const Wide b = std::min({Wide{l_max}, floor_par(floor_div(r0, 3), par), floor_par(3 * Wide{r0} - 2 * Wide{n} - 1, par)});
  return static_cast<Index>(std::max<Wide>(b, -2));
}

/// First-index range for a 3-cadence with midpoint m0 and the first index in
/// [l_min, l_max]: the last index stays <= n, 2 m0 - i >= 3i and
/// 3(2 m0 - i) - i > 2n. The range may be empty.
inline std::pair<Index, Index> lem30_mid_bounds(Index l_min, Index l_max, Index n, Index m0, Parity p = Parity::Even) {
  const int par = parity_value(p);
  const Wide lo = std::max<Wide>(l_min, ceil_par(2 * Wide{m0} - n, par));
  const Wide hi = std::min({Wide{l_max}, floor_par(floor_div(m0, 2), par), floor_par(floor_div(3 * Wide{m0} - n - 1, 2), par)});
  return {narrow(lo, -2, n + 2), narrow(hi, -2, n + 2)};
}

namespace detail {

inline Witness as_cadence(Witness w) {
  w.kind = WitnessKind::Cadence;
  w.L = {};
  w.R = {};
  return w;
}

inline StepOutcome certified_cadence(const StringView& v, Index i, Index j, std::optional<Index> r0,
                                     std::optional<Index> m0) {
  Witness w = triple(v, i, j);
  if (!is_k_cadence(v, w.i, w.d, 3)) throw Error(Errc::InternalError, "candidate " + describe(w) + " is not a 3-cadence");
  return StepOutcome::found(certify(v, as_cadence(w)), r0, m0);
}

}  // namespace detail

/// One pass of the shrinking loop for the run in ctx against last indices
/// >= r_min. All remaining cadences have their midpoint >= m_floor; callers
/// may pass the previous m0 + 1 to avoid rescanning.
inline StepOutcome cor3_step(const StringView& v, const RunContext& ctx, Index r_min, Index m_floor = 0) {
  const int par = parity_value(ctx.p);
  const Wide n = v.size();
  if (ctx.p == Parity::Both || ctx.l_min < 1 || ctx.l_min > ctx.l_max || ((ctx.l_min - par) & 1) ||
      ((ctx.l_max - par) & 1) || ctx.n != v.size() || 3 * Wide{ctx.l_max} > n || 3 * Wide{r_min} <= 2 * n)
    throw Error(Errc::PreconditionViolated, "cor3_step context is malformed");
  detail::count_step(v);

  const Wide r_cap = ctx.mode == Mode::Compressed ? std::min<Wide>(n, Wide{ctx.r_stop} - 1) : n;
  const Wide r_max = floor_par(r_cap, par);
  const Wide r_lo = ceil_par(r_min, par);
  if (r_lo > r_max) return StepOutcome::none();
  auto first_c = [&](Parity q, Wide lo, Wide hi) -> std::optional<Index> {
    if (lo > hi) return std::nullopt;
    return v.first_in(ctx.c, q, Interval{narrow(lo, 0, v.size() + 1), narrow(hi, 0, v.size() + 1)});
  };
  auto first_max = [&](Wide r) { return lem30_bounds(ctx.l_min, ctx.l_max, v.size(), static_cast<Index>(r), ctx.p); };

  const auto r0 = first_c(ctx.p, r_lo, r_max);
  if (!r0) return StepOutcome::none();

  const Wide lp = first_max(*r0);
  if (lp >= ctx.l_min) {
    const Wide lo = std::max<Wide>((Wide{ctx.l_min} + *r0) / 2, m_floor);
    if (const auto m = first_c(Parity::Both, lo, (lp + *r0) / 2))
      return detail::certified_cadence(v, static_cast<Index>(2 * Wide{*m} - *r0), *r0, r0, {});
  }

  const Wide lp_end = first_max(r_max);
  if (lp_end < ctx.l_min) return StepOutcome::none(r0);
  const Wide m_lo = std::max<Wide>((std::max<Wide>(lp, Wide{ctx.l_min} - 2) + *r0) / 2 + 1, m_floor);
  const auto m0 = first_c(Parity::Both, m_lo, (lp_end + r_max) / 2);
  if (!m0) return StepOutcome::none(r0);

  const Wide two_m = 2 * Wide{*m0};
  const Wide i_lo = std::max({Wide{ctx.l_min}, ceil_par(two_m - n, par), ceil_par(two_m - r_max, par)});
  const Wide i_hi = std::min({Wide{ctx.l_max}, floor_par(floor_div(*m0, 2), par),
                              floor_par(floor_div(3 * Wide{*m0} - n - 1, 2), par), two_m - r_lo});
  if (i_lo <= i_hi)
    if (const auto j = first_c(ctx.p, two_m - i_hi, two_m - i_lo))
      return detail::certified_cadence(v, static_cast<Index>(two_m - *j), *j, r0, m0);

  // Every last index up to 2 m0 - l2_min would pair with midpoint m0.
  const Wide l2_min = std::max<Wide>(ctx.l_min, ceil_par(two_m - n, par));
  const Wide next = ceil_par(std::max<Wide>(*r0, two_m - l2_min) + 1, par);
  return StepOutcome::shrunk(narrow(next, 0, v.size() + 2), r0, m0);
}

/// Cadences from the run in ctx whose last index is >= r_stop. Every such
/// sub-cadence is maximal, so this is an L-R question against the tail.
inline std::optional<Witness> tail_check(const StringView& v, const RunContext& ctx) {
  if (!v.is_binary()) throw Error(Errc::AlphabetMismatch, "tail_check needs a binary view");
  const Interval tail{ctx.r_stop, v.size()};
  if (restrict_to(tail, ctx.p).empty()) return std::nullopt;
  const RunShape s = shape(v, ctx.p, tail);
  const char c = ctx.c;
  if (const auto x = s.pattern(other_char(c), c)) {
    // S[l_max] = c and S[a] = S[l_max + 2] != c close the run.
    const Witness w = lr2_witness(v, ctx.l_max, *x + 2);
    if (!is_k_cadence(v, w.i, w.d, 3)) throw Error(Errc::InternalError, "tail witness " + describe(w) + " is not maximal");
    return certify(v, detail::as_cadence(w));
  }
  const auto w = lr01_check(v, ctx.p, c, Interval{ctx.l_min, ctx.l_max}, s.run_of(c));
  if (!w) return std::nullopt;
  if (!is_k_cadence(v, w->i, w->d, 3)) throw Error(Errc::InternalError, "tail witness " + describe(*w) + " is not maximal");
  return certify(v, detail::as_cadence(*w));
}

struct DetectOptions {
  Mode mode = Mode::Auto;
};

struct ContextTrace {
  Parity p = Parity::Even;
  bool reversed = false;
  int run_index = 1;
  char c = '0';
  Index l_min = 0, l_max = 0;
  Index r_stop = 0;
  bool tail = false;
  std::uint64_t steps = 0;
  bool found = false;
};

struct DetectionTrace {
  Mode mode = Mode::Uncompressed;
  std::vector<ContextTrace> contexts;

  std::uint64_t total_steps() const {
    std::uint64_t s = 0;
    for (const auto& c : contexts) s += c.steps;
    return s;
  }
  std::uint64_t max_steps() const {
    std::uint64_t s = 0;
    for (const auto& c : contexts) s = std::max(s, c.steps);
    return s;
  }
};

inline Mode resolve(Mode m, const StringView& v) {
  if (m != Mode::Auto) return m;
  return v.is_compressed() ? Mode::Compressed : Mode::Uncompressed;
}

namespace detail {

inline std::optional<Witness> search_context(const StringView& v, const RunContext& ctx, ContextTrace& tr) {
  Index r_min = r1_threshold(ctx.l_min, ctx.n, ctx.p);
  Index m_floor = 0;
  while (r_min <= ctx.n && r_min < ctx.r_stop) {
    ++tr.steps;
    const StepOutcome out = cor3_step(v, ctx, r_min, m_floor);
    if (out.kind == StepOutcome::Kind::Found) return out.witness;
    if (out.kind == StepOutcome::Kind::NoCadence) break;
    if (out.r_min <= r_min) throw Error(Errc::InternalError, "cor3_step did not shrink R");
    r_min = out.r_min;
    m_floor = *out.m0 + 1;
  }
  if (tr.tail) return tail_check(v, ctx);
  return std::nullopt;
}

}  // namespace detail

/// Some 3-cadence of a binary view, or none. The witness is certified
/// against v before it is returned.
inline std::optional<Witness> detect_3cadence(const StringView& v, DetectOptions opts = {},
                                              DetectionTrace* trace = nullptr) {
  if (!v.is_binary()) throw Error(Errc::AlphabetMismatch, "3-cadence detection needs a binary string");
  const Mode mode = resolve(opts.mode, v);
  if (trace) {
    trace->mode = mode;
    trace->contexts.clear();
  }
  const Index n = v.size();
  if (n < 3) return std::nullopt;
  const Index third = n / 3;

  for (const Parity p : {Parity::Even, Parity::Odd}) {
    for (const bool rev : {false, true}) {
      const StringView view = rev ? v.reversed() : v;
      const Interval lp = restrict_to(Interval{1, third}, p);
      if (lp.empty()) continue;

      Index start = lp.lo;
      char c = view.char_at(start);
      for (int run = 1; run <= 2 && start <= lp.hi; ++run) {
        const auto change = view.first_in(other_char(c), p, Interval{start, lp.hi});
        const Index end = change ? *change - 2 : lp.hi;

        RunContext ctx{p, run, c, start, end, n, end + 2, n + 2, mode};
        ContextTrace tr{p, rev, run, c, start, end, 0, false, 0, false};
        tr.tail = mode == Mode::Compressed && ctx.a <= third;
        if (tr.tail) ctx.r_stop = r1_threshold(ctx.a, n, p);
        tr.r_stop = ctx.r_stop;

        auto w = detail::search_context(view, ctx, tr);
        tr.found = w.has_value();
        if (trace) trace->contexts.push_back(tr);
        if (w) {
          Witness out = rev ? detail::unmirror(v, *w) : *w;
          return certify(v, detail::as_cadence(out));
        }
        if (!change) break;
        start = *change;
        c = other_char(c);
      }
    }
  }
  return std::nullopt;
}

/// Some 3-sub-cadence within the first min(n, 9) characters, scanning i then d.
inline std::optional<Witness> detect_3subcadence(const StringView& v) {
  if (!v.is_binary()) throw Error(Errc::AlphabetMismatch, "3-sub-cadence detection needs a binary string");
  const Index m = std::min<Index>(v.size(), kVdw32.m);
  for (Index i = 1; i <= m; ++i)
    for (Index d = 1; i + 2 * d <= m; ++d) {
      const char c = v.char_at(i);
      if (v.char_at(i + d) == c && v.char_at(i + 2 * d) == c)
        return certify(v, Witness{i, d, 3, c, WitnessKind::SubCadence, {}, {}});
    }
  if (v.size() >= kVdw32.m) throw Error(Errc::InternalError, "nine characters without a 3-sub-cadence");
  return std::nullopt;
}

}  // namespace cadence
