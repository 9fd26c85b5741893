#pragma once

// Uniform query interface over plain and grammar-compressed strings.
//
// A StringView answers exactly the questions the detectors ask: random access,
// parity-filtered prefix counts, first/last occurrence of a character inside an
// interval, and uniformity. Parity always refers to the view's own 1-based
// indices. Plain backends answer by scanning, grammar backends by root-to-leaf
// descents over the precomputed RuleStats, so a query costs O(depth).
//
// Adapters (reverse, complement, 2->1 projection) are folded into a direction
// flag and a character map; they never copy the underlying data.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "cadence/error.hpp"
#include "cadence/index_math.hpp"
#include "cadence/slp.hpp"

namespace cadence {

enum class Parity : std::uint8_t { Even, Odd, Both };

inline int parity_value(Parity p) { return p == Parity::Odd ? 1 : 0; }
inline Parity parity_of(Index i) { return (i & 1) ? Parity::Odd : Parity::Even; }
inline bool has_parity(Index i, Parity p) { return p == Parity::Both || parity_of(i) == p; }
inline Index parity_step(Parity p) { return p == Parity::Both ? 1 : 2; }

inline Parity flip(Parity p) {
  switch (p) {
    case Parity::Even: return Parity::Odd;
    case Parity::Odd: return Parity::Even;
    default: return Parity::Both;
  }
}

inline const char* to_string(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    default: return "both";
  }
}

/// 1-based inclusive index range; empty when lo > hi.
struct Interval {
  Index lo = 1;
  Index hi = 0;

  bool empty() const { return lo > hi; }
  Index size() const { return empty() ? 0 : hi - lo + 1; }
  bool contains(Index i) const { return lo <= i && i <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// First and last index of `r` carrying parity p; empty if there is none.
inline Interval restrict_to(Interval r, Parity p) {
  if (r.empty() || p == Parity::Both) return r;
  const int par = parity_value(p);
  return Interval{static_cast<Index>(ceil_par(r.lo, par)), static_cast<Index>(floor_par(r.hi, par))};
}

struct QueryStats {
  std::uint64_t char_accesses = 0;  // characters read by plain scans
  std::uint64_t rule_visits = 0;    // grammar rules touched by descents
  std::uint64_t queries = 0;
  std::uint64_t steps = 0;          // shrinking-loop iterations

  std::uint64_t accesses() const { return char_accesses + rule_visits; }
};

enum class Adapter { Reverse, Complement, Project2to1 };

inline char other_char(char c) { return c == '0' ? '1' : '0'; }

namespace detail {

using CharMask = unsigned;  // bit b set <=> base character '0'+b selected

inline bool in_mask(CharMask m, char c) { return (m >> (c - '0')) & 1U; }

class PlainBackend {
 public:
  explicit PlainBackend(std::string s) : s_(std::move(s)) {}

  Index size() const { return static_cast<Index>(s_.size()); }
  const std::string& text() const { return s_; }
  Length total(char c) const { return static_cast<Length>(std::count(s_.begin(), s_.end(), c)); }

  char at(Index i, QueryStats* st) const {
    if (st) ++st->char_accesses;
    return s_[static_cast<std::size_t>(i - 1)];
  }

  std::optional<Index> first(CharMask m, Parity p, Index lo, Index hi, QueryStats* st) const {
    const Index step = parity_step(p);
    if (p != Parity::Both && !has_parity(lo, p)) ++lo;
    for (Index i = lo; i <= hi; i += step)
      if (in_mask(m, at(i, st))) return i;
    return std::nullopt;
  }

  std::optional<Index> last(CharMask m, Parity p, Index lo, Index hi, QueryStats* st) const {
    const Index step = parity_step(p);
    if (p != Parity::Both && !has_parity(hi, p)) --hi;
    for (Index i = hi; i >= lo; i -= step)
      if (in_mask(m, at(i, st))) return i;
    return std::nullopt;
  }

  Length count(CharMask m, Parity p, Index i, QueryStats* st) const {
    Length n = 0;
    for (Index j = 1; j <= i; ++j)
      if (has_parity(j, p) && in_mask(m, at(j, st))) ++n;
    return n;
  }

 private:
  std::string s_;
};

class SlpBackend {
 public:
  explicit SlpBackend(Slp slp) : g_(std::move(slp)) {}

  Index size() const { return static_cast<Index>(g_.length()); }
  const Slp& grammar() const { return g_; }
  Length total(char c) const { return g_.count(c); }

  char at(Index i, QueryStats* st) const {
    std::uint32_t node = g_.start();
    Length off = static_cast<Length>(i);
    while (true) {
      if (st) ++st->rule_visits;
      const Rule& r = g_.rule(node);
      if (r.is_terminal()) return r.ch;
      const Length ll = g_.length(r.left);
      if (off <= ll) {
        node = r.left;
      } else {
        off -= ll;
        node = r.right;
      }
    }
  }

  // Occurrences of mask characters at positions <= i with global parity p.
  Length count(CharMask m, Parity p, Index i, QueryStats* st) const {
    if (i <= 0) return 0;
    std::uint32_t node = g_.start();
    Length rem = static_cast<Length>(i);
    Length base = 0;  // global index preceding the node's first character
    Length acc = 0;
    while (true) {
      if (st) ++st->rule_visits;
      if (rem >= g_.length(node)) return acc + in_rule(node, m, p, base);
      const Rule& r = g_.rule(node);
      const Length ll = g_.length(r.left);
      if (rem <= ll) {
        node = r.left;
      } else {
        acc += in_rule(r.left, m, p, base);
        rem -= ll;
        base += ll;
        node = r.right;
      }
    }
  }

  // Position of the k-th (1-based) occurrence; k must not exceed the total.
  Index select(CharMask m, Parity p, Length k, QueryStats* st) const {
    std::uint32_t node = g_.start();
    Length base = 0;
    while (true) {
      if (st) ++st->rule_visits;
      const Rule& r = g_.rule(node);
      if (r.is_terminal()) return static_cast<Index>(base + 1);
      const Length cl = in_rule(r.left, m, p, base);
      if (k <= cl) {
        node = r.left;
      } else {
        k -= cl;
        base += g_.length(r.left);
        node = r.right;
      }
    }
  }

  std::optional<Index> first(CharMask m, Parity p, Index lo, Index hi, QueryStats* st) const {
    const Length before = count(m, p, lo - 1, st);
    const Length upto = count(m, p, hi, st);
    if (before == upto) return std::nullopt;
    return select(m, p, before + 1, st);
  }

  std::optional<Index> last(CharMask m, Parity p, Index lo, Index hi, QueryStats* st) const {
    const Length before = count(m, p, lo - 1, st);
    const Length upto = count(m, p, hi, st);
    if (before == upto) return std::nullopt;
    return select(m, p, upto, st);
  }

 private:
  // Mask characters inside `rule` whose global index (base + local offset)
  // has parity p.
  Length in_rule(std::uint32_t rule, CharMask m, Parity p, Length base) const {
    const auto& cnt = g_.stats().count[rule];
    Length n = 0;
    for (int c = 0; c < kMaxAlphabet; ++c) {
      if (!((m >> c) & 1U)) continue;
      if (p == Parity::Both) {
        n += cnt[c][0] + cnt[c][1];
      } else {
        const unsigned q = static_cast<unsigned>((parity_value(p) + base) & 1U);
        n += cnt[c][q];
      }
    }
    return n;
  }

  Slp g_;
};

using Backend = std::variant<PlainBackend, SlpBackend>;

}  // namespace detail

class StringView {
 public:
  static StringView plain(std::string s) {
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!is_alphabet_char(s[i]))
        throw Error(Errc::BadCharacter, "character outside {0,1,2} at position " + std::to_string(i + 1), i + 1);
    const bool ternary = s.find('2') != std::string::npos;
    return StringView(std::make_shared<const detail::Backend>(std::in_place_type<detail::PlainBackend>, std::move(s)),
                      ternary ? 3 : 2);
  }

  static StringView compressed(Slp slp) {
    const int sigma = slp.alphabet_size();
    return StringView(std::make_shared<const detail::Backend>(std::in_place_type<detail::SlpBackend>, std::move(slp)),
                      sigma);
  }

  Index size() const { return n_; }
  int alphabet_size() const { return sigma_; }
  bool is_binary() const { return sigma_ == 2; }
  bool is_compressed() const { return std::holds_alternative<detail::SlpBackend>(*base_); }
  bool is_reversed() const { return reversed_; }

  /// Grammar behind the view, or nullptr for plain backends.
  const Slp* grammar() const {
    const auto* b = std::get_if<detail::SlpBackend>(base_.get());
    return b ? &b->grammar() : nullptr;
  }

  /// Copy of the view that records query costs into `stats` (may be null).
  StringView with_stats(QueryStats* stats) const {
    StringView v = *this;
    v.stats_ = stats;
    return v;
  }
  QueryStats* stats() const { return stats_; }

  char char_at(Index i) const {
    if (i < 1 || i > n_)
      throw Error(Errc::OutOfRange, "index " + std::to_string(i) + " outside [1, " + std::to_string(n_) + "]");
    note_query();
    const Index b = reversed_ ? n_ + 1 - i : i;
    const char c = std::visit([&](const auto& be) { return be.at(b, stats_); }, *base_);
    return map_[c - '0'];
  }

  /// Positions j <= i with j of parity p carrying c.
  Length count_prefix(char c, Parity p, Index i) const {
    if (i < 0 || i > n_)
      throw Error(Errc::OutOfRange, "prefix " + std::to_string(i) + " outside [0, " + std::to_string(n_) + "]");
    note_query();
    const auto m = preimage(c);
    if (!reversed_) return std::visit([&](const auto& be) { return be.count(m, p, i, stats_); }, *base_);
    const Parity bp = base_parity(p);
    return std::visit(
        [&](const auto& be) { return be.count(m, bp, n_, stats_) - be.count(m, bp, n_ - i, stats_); }, *base_);
  }

  /// Smallest i in r (clipped to [1, n]) of parity p carrying c.
  std::optional<Index> first_in(char c, Parity p, Interval r) const { return find(preimage(c), p, r, true); }

  /// Largest i in r (clipped to [1, n]) of parity p carrying c.
  std::optional<Index> last_in(char c, Parity p, Interval r) const { return find(preimage(c), p, r, false); }

  /// True iff every position of parity p in r carries c (vacuous when empty).
  bool is_uniform(char c, Parity p, Interval r) const {
    detail::CharMask others = 0;
    for (int b = 0; b < kMaxAlphabet; ++b)
      if (map_[b] != c) others |= 1U << b;
    return !find(others, p, r, true).has_value();
  }

  StringView adapt(Adapter a) const {
    StringView v = *this;
    switch (a) {
      case Adapter::Reverse:
        v.reversed_ = !reversed_;
        break;
      case Adapter::Complement:
        if (sigma_ != 2) throw Error(Errc::AlphabetMismatch, "complement needs a binary view");
        for (char& c : v.map_)
          if (c != '2') c = other_char(c);
        break;
      case Adapter::Project2to1:
        if (sigma_ != 3) throw Error(Errc::AlphabetMismatch, "2->1 projection needs a ternary view");
        for (char& c : v.map_)
          if (c == '2') c = '1';
        v.sigma_ = 2;
        break;
    }
    return v;
  }

  StringView reversed() const { return adapt(Adapter::Reverse); }

  /// Maps an index of this view to the index of the reversed view.
  Index mirror(Index i) const { return n_ + 1 - i; }
  Interval mirror(Interval r) const { return r.empty() ? r : Interval{n_ + 1 - r.hi, n_ + 1 - r.lo}; }
  Parity mirror(Parity p) const { return (n_ & 1) ? p : flip(p); }

  /// Materializes the view (after adapters) if it has at most max_len characters.
  std::string to_string(Length max_len) const {
    if (static_cast<Length>(n_) > max_len)
      throw Error(Errc::TooLong, "expansion has " + std::to_string(n_) + " characters", static_cast<Length>(n_));
    std::string out;
    if (const auto* pb = std::get_if<detail::PlainBackend>(base_.get())) {
      out = pb->text();
    } else {
      out = decompress(std::get<detail::SlpBackend>(*base_).grammar(), max_len);
    }
    for (char& c : out) c = map_[c - '0'];
    if (reversed_) std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  StringView(std::shared_ptr<const detail::Backend> base, int sigma)
      : base_(std::move(base)),
        n_(std::visit([](const auto& be) { return be.size(); }, *base_)),
        sigma_(sigma) {}

  void note_query() const {
    if (stats_) ++stats_->queries;
  }

  detail::CharMask preimage(char c) const {
    detail::CharMask m = 0;
    for (int b = 0; b < kMaxAlphabet; ++b)
      if (map_[b] == c) m |= 1U << b;
    return m;
  }

  Parity base_parity(Parity p) const { return reversed_ ? mirror(p) : p; }

  std::optional<Index> find(detail::CharMask m, Parity p, Interval r, bool first) const {
    r.lo = std::max<Index>(r.lo, 1);
    r.hi = std::min<Index>(r.hi, n_);
    if (r.empty() || m == 0) return std::nullopt;
    note_query();
    if (!reversed_) {
      return std::visit(
          [&](const auto& be) { return first ? be.first(m, p, r.lo, r.hi, stats_) : be.last(m, p, r.lo, r.hi, stats_); },
          *base_);
    }
    const Interval br = mirror(r);
    const Parity bp = base_parity(p);
    const auto hit = std::visit(
        [&](const auto& be) {
          return first ? be.last(m, bp, br.lo, br.hi, stats_) : be.first(m, bp, br.lo, br.hi, stats_);
        },
        *base_);
    if (!hit) return std::nullopt;
    return mirror(*hit);
  }

  std::shared_ptr<const detail::Backend> base_;
  Index n_ = 0;
  int sigma_ = 2;
  bool reversed_ = false;
  std::array<char, kMaxAlphabet> map_{'0', '1', '2'};
  QueryStats* stats_ = nullptr;
};

/// Classification of the parity-p subsequence of an interval.
struct RunShape {
  enum class Kind { Empty, AllOf, TwoRuns, Complex };

  Kind kind = Kind::Empty;
  Parity parity = Parity::Both;
  char first_char = 0;
  Index first_pos = 0;  // first index of the subsequence
  Index last_pos = 0;   // last index of the subsequence
  Index boundary = 0;   // TwoRuns/Complex: last index of the first run
  Index back = 0;       // Complex: x with S[x] != first_char == S[x + step]

  Index step() const { return parity_step(parity); }

  /// Index x with S[x] = a and S[x + step] = b recorded as evidence, if any.
  std::optional<Index> pattern(char a, char b) const {
    if (kind == Kind::TwoRuns || kind == Kind::Complex) {
      if (a == first_char && b != first_char) return boundary;
    }
    if (kind == Kind::Complex && a != first_char && b == first_char) return back;
    return std::nullopt;
  }

  /// The run carrying c when the shape has at most two runs; empty otherwise.
  Interval run_of(char c) const {
    switch (kind) {
      case Kind::AllOf:
        return c == first_char ? Interval{first_pos, last_pos} : Interval{};
      case Kind::TwoRuns:
        return c == first_char ? Interval{first_pos, boundary} : Interval{boundary + step(), last_pos};
      default:
        return Interval{};
    }
  }
};

/// Classifies a binary view's parity-p subsequence of r with one char_at and
/// at most two first_in calls.
inline RunShape shape(const StringView& v, Parity p, Interval r) {
  if (!v.is_binary()) throw Error(Errc::AlphabetMismatch, "shape needs a binary view");
  RunShape s;
  s.parity = p;
  r.lo = std::max<Index>(r.lo, 1);
  r.hi = std::min<Index>(r.hi, v.size());
  const Interval rp = restrict_to(r, p);
  if (rp.empty()) return s;
  s.first_pos = rp.lo;
  s.last_pos = rp.hi;
  s.first_char = v.char_at(rp.lo);
  const auto change = v.first_in(other_char(s.first_char), p, rp);
  if (!change) {
    s.kind = RunShape::Kind::AllOf;
    return s;
  }
  s.boundary = *change - s.step();
  const auto back = v.first_in(s.first_char, p, Interval{*change, rp.hi});
  if (!back) {
    s.kind = RunShape::Kind::TwoRuns;
    return s;
  }
  s.kind = RunShape::Kind::Complex;
  s.back = *back - s.step();
  return s;
}

}  // namespace cadence
