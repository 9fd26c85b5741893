#pragma once

// Reduction instances built as grammars. Each encodes the question "is there
// an l with P[l] = P'[l] = 1?" for binary P, P' as a cadence question, and
// stays polynomial in the grammar sizes of P and P' even when the strings
// themselves are exponentially long.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "cadence/error.hpp"
#include "cadence/oracle.hpp"
#include "cadence/slp.hpp"
#include "cadence/string_view.hpp"

namespace cadence {

enum class GadgetKind { CadenceChar1, Ternary3, LR3 };

inline const char* to_string(GadgetKind k) {
  switch (k) {
    case GadgetKind::CadenceChar1: return "char1";
    case GadgetKind::Ternary3: return "ternary3";
    default: return "lr3";
  }
}

struct GadgetInstance {
  Slp slp;
  GadgetKind kind;
  Index k = 3;
  std::optional<Interval> L, R;
  Length plen = 0;   // |P| after a possible swap
  Length pplen = 0;  // |P'| after a possible swap
  bool swapped = false;
};

namespace detail {

inline Slp run_of(char c, Length m) { return power(literal(std::string(1, c)), m); }

// x ++ run_of(c, m), skipping empty runs.
inline Slp append_run(const Slp& x, char c, Length m) { return m == 0 ? x : concat(x, run_of(c, m)); }
inline Slp prepend_run(char c, Length m, const Slp& x) { return m == 0 ? x : concat(run_of(c, m), x); }

inline Length checked_mul(Length a, Length b) {
  if (a != 0 && b > kMaxLength / a) throw Error(Errc::LengthOverflow, "gadget length exceeds 2^63-1");
  return a * b;
}

struct Operands {
  const Slp* p;
  const Slp* pp;
  bool swapped;
};

inline Operands order(const Slp& p, const Slp& pp) {
  if (p.alphabet_size() != 2 || pp.alphabet_size() != 2)
    throw Error(Errc::AlphabetMismatch, "gadget operands must be binary");
  if (pp.length() > p.length()) return {&pp, &p, true};
  return {&p, &pp, false};
}

// P' padded with zeros to length |P|.
inline Slp pad(const Operands& o) { return append_run(*o.pp, '0', o.p->length() - o.pp->length()); }

// Brackets one and three, shared by both cadence gadgets: the padded and
// reversed P' sits mirrored around the centre of the middle bracket.
inline std::pair<Slp, Slp> outer_brackets(const Operands& o, Length k) {
  const Length p = o.p->length();
  const Slp first = append_run(prepend_run('0', checked_mul(k - 1, p), *o.p), '0', checked_mul(k, p) + 1);
  const Slp third = append_run(prepend_run('0', checked_mul(k, p) + 1, reverse(pad(o))), '0', checked_mul(k - 1, p));
  return {first, third};
}

}  // namespace detail

/// k brackets of length 2k|P|+1: P, a lone '1' in the centre, reversed padded
/// P', then k - 3 all-ones brackets. Has a k-cadence with character '1' iff
/// P and P' share a 1-position.
inline GadgetInstance gadget_cadence_char1(const Slp& P, const Slp& Pp, Index k) {
  if (k < 3) throw Error(Errc::PreconditionViolated, "char1 gadget needs k >= 3");
  const auto o = detail::order(P, Pp);
  const auto kk = static_cast<Length>(k);
  const Length p = o.p->length();
  const Length width = detail::checked_mul(2 * kk, p) + 1;
  detail::checked_mul(kk, width);

  auto [first, third] = detail::outer_brackets(o, kk);
  const Slp half = detail::run_of('0', detail::checked_mul(kk, p));
  const Slp second = concat(concat(half, literal("1")), half);
  Slp s = concat(concat(first, second), third);
  if (k > 3) s = concat(s, power(detail::run_of('1', width), kk - 3));
  return GadgetInstance{std::move(s), GadgetKind::CadenceChar1, k, {}, {}, p, o.pp->length(), o.swapped};
}

/// Three brackets as above with the middle one padded by '2'. Has a 3-cadence
/// iff P and P' share a 1-position.
inline GadgetInstance gadget_cadence_ternary3(const Slp& P, const Slp& Pp) {
  const auto o = detail::order(P, Pp);
  const Length p = o.p->length();
  detail::checked_mul(3, detail::checked_mul(6, p) + 1);
  auto [first, third] = detail::outer_brackets(o, 3);
  const Slp half = detail::run_of('2', 3 * p);
  const Slp second = concat(concat(half, literal("1")), half);
  Slp s = concat(concat(first, second), third);
  return GadgetInstance{std::move(s), GadgetKind::Ternary3, 3, {}, {}, p, o.pp->length(), o.swapped};
}

/// S = 1 0^|P| P P'' with P'' the padded P' with every character doubled,
/// L = {1}, R the span of P''. Has an L-R-3-cadence iff P and P' share a
/// 1-position.
inline GadgetInstance gadget_lr3(const Slp& P, const Slp& Pp) {
  const auto o = detail::order(P, Pp);
  const Length p = o.p->length();
  detail::checked_mul(4, p);
  const Slp s = concat(concat(concat(literal("1"), detail::run_of('0', p)), *o.p), double_chars(detail::pad(o)));
  const auto pi = static_cast<Index>(p);
  return GadgetInstance{s, GadgetKind::LR3, 3, Interval{1, 1}, Interval{2 * pi + 2, 4 * pi + 1}, p, o.pp->length(),
                        o.swapped};
}

/// Replaces every '2' by '1'.
inline Slp esm_212_project(const Slp& s) {
  if (s.alphabet_size() != 3) throw Error(Errc::AlphabetMismatch, "projection needs a ternary grammar");
  return substitute(s, '2', '1');
}

/// (i, d) with S[i] = '2', S[i+d] = '1', S[i+2d] = '2', sorted.
inline std::set<std::pair<Index, Index>> equidistant_212(std::string_view s) {
  std::set<std::pair<Index, Index>> out;
  const auto n = static_cast<Index>(s.size());
  for (Index i = 1; i <= n; ++i) {
    if (s[static_cast<std::size_t>(i - 1)] != '2') continue;
    for (Index d = 1; i + 2 * d <= n; ++d)
      if (s[static_cast<std::size_t>(i + d - 1)] == '1' && s[static_cast<std::size_t>(i + 2 * d - 1)] == '2')
        out.emplace(i, d);
  }
  return out;
}

/// Throws HypothesisViolated unless L precedes R, S[L] and S[R] use only
/// {0,2}, all other positions use only {0,1}, and no midpoint of an L-R pair
/// falls inside L or R.
inline void check_esm_hypothesis(std::string_view s, Interval L, Interval R) {
  const auto n = static_cast<Index>(s.size());
  auto fail = [](const std::string& why) { return Error(Errc::HypothesisViolated, why); };
  if (L.empty() || R.empty() || L.lo < 1 || R.hi > n || L.hi >= R.lo) throw fail("L and R must be non-empty, in range and L before R");
  if (2 * L.hi >= L.lo + R.lo || L.hi + R.hi >= 2 * R.lo) throw fail("an L-R midpoint falls inside L or R");
  for (Index i = 1; i <= n; ++i) {
    const char c = s[static_cast<std::size_t>(i - 1)];
    if (!is_alphabet_char(c)) throw Error(Errc::BadCharacter, "character outside {0,1,2}", static_cast<std::uint64_t>(i));
    const bool boundary = L.contains(i) || R.contains(i);
    if (boundary ? c == '1' : c == '2')
      throw fail("position " + std::to_string(i) + (boundary ? " in L or R carries '1'" : " outside L and R carries '2'"));
  }
}

/// Compares equidistant "212" occurrences in S with the character-'1'
/// L-R-3-cadences of its projection.
inline bool esm_212_equiv_check(std::string_view s, Interval L, Interval R) {
  check_esm_hypothesis(s, L, R);
  std::string projected(s);
  for (char& c : projected)
    if (c == '2') c = '1';
  std::set<std::pair<Index, Index>> cadences;
  for (const Witness& w : enum_lr(projected, L, R, 3, '1').witnesses) cadences.emplace(w.i, w.d);
  return cadences == equidistant_212(s);
}

}  // namespace cadence
