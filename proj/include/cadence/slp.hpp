#pragma once

// Straight-line programs in Chomsky normal form.
//
// Rules are stored in an ordered list; a pair rule may only reference rules
// that precede it, and the last rule is the start symbol. Every Slp is
// validated on construction and carries per-rule statistics (expansion length,
// parity-split character counts, depth) that make random access and
// parity-filtered counting possible without expanding the string.

#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cadence/error.hpp"

namespace cadence {

using Length = std::uint64_t;

/// Largest expansion length an Slp may have (63-bit unsigned).
inline constexpr Length kMaxLength = (Length{1} << 63) - 1;

inline constexpr int kMaxAlphabet = 3;

inline bool is_alphabet_char(char c) { return c == '0' || c == '1' || c == '2'; }

struct Rule {
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  std::uint32_t left = kNone;
  std::uint32_t right = kNone;
  char ch = 0;

  static Rule terminal(char c) { return Rule{kNone, kNone, c}; }
  static Rule pair(std::uint32_t l, std::uint32_t r) { return Rule{l, r, 0}; }

  bool is_terminal() const { return left == kNone; }

  friend bool operator==(const Rule&, const Rule&) = default;
};

// Offset parity is taken on 1-based local offsets: index 1 counts characters
// at odd offsets (1, 3, 5, ...), index 0 those at even offsets.
struct RuleStats {
  using Counts = std::array<std::array<Length, 2>, kMaxAlphabet>;

  std::vector<Length> length;
  std::vector<Counts> count;
  std::vector<std::uint32_t> depth;  // a terminal has depth 1
};

/// Checks the CNF invariants and computes RuleStats. Throws Error with
/// EmptyGrammar, ForwardReference (value = 1-based rule number), BadCharacter
/// or LengthOverflow.
inline RuleStats validate(const std::vector<Rule>& rules) {
  if (rules.empty()) throw Error(Errc::EmptyGrammar, "grammar has no rules");
  RuleStats st;
  st.length.resize(rules.size());
  st.count.resize(rules.size());
  st.depth.resize(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Rule& r = rules[i];
    if (r.is_terminal()) {
      if (!is_alphabet_char(r.ch))
        throw Error(Errc::BadCharacter, "terminal rule " + std::to_string(i + 1) + " has an invalid character",
                    i + 1);
      st.length[i] = 1;
      st.count[i] = {};
      st.count[i][r.ch - '0'][1] = 1;
      st.depth[i] = 1;
      continue;
    }
    if (r.left >= i || r.right >= i || r.right == Rule::kNone)
      throw Error(Errc::ForwardReference,
                  "rule " + std::to_string(i + 1) + " references a rule that does not precede it", i + 1);
    const Length ll = st.length[r.left];
    const Length rl = st.length[r.right];
    if (ll > kMaxLength - rl)
      throw Error(Errc::LengthOverflow, "rule " + std::to_string(i + 1) + " expands beyond 2^63-1 characters",
                  i + 1);
    st.length[i] = ll + rl;
    const unsigned shift = static_cast<unsigned>(ll & 1U);
    for (int c = 0; c < kMaxAlphabet; ++c)
      for (unsigned q = 0; q < 2; ++q)
        st.count[i][c][q] = st.count[r.left][c][q] + st.count[r.right][c][q ^ shift];
    st.depth[i] = 1 + std::max(st.depth[r.left], st.depth[r.right]);
  }
  return st;
}

class Slp {
 public:
  explicit Slp(std::vector<Rule> rules) : rules_(std::move(rules)), stats_(validate(rules_)) {}

  const std::vector<Rule>& rules() const { return rules_; }
  const Rule& rule(std::uint32_t i) const { return rules_[i]; }
  std::size_t rule_count() const { return rules_.size(); }
  std::uint32_t start() const { return static_cast<std::uint32_t>(rules_.size() - 1); }

  const RuleStats& stats() const { return stats_; }
  Length length() const { return stats_.length[start()]; }
  Length length(std::uint32_t rule) const { return stats_.length[rule]; }
  std::uint32_t depth() const { return stats_.depth[start()]; }

  /// Occurrences of `c` in the full expansion.
  Length count(char c) const {
    const auto& cnt = stats_.count[start()][c - '0'];
    return cnt[0] + cnt[1];
  }

  /// 3 if any terminal rule carries '2', otherwise 2.
  int alphabet_size() const {
    for (const Rule& r : rules_)
      if (r.is_terminal() && r.ch == '2') return 3;
    return 2;
  }

 private:
  std::vector<Rule> rules_;
  RuleStats stats_;
};

namespace detail {

// Appends `src`'s rules to `dst` with indices shifted; returns the new index
// of src's start rule.
inline std::uint32_t append_renumbered(std::vector<Rule>& dst, const Slp& src) {
  const auto base = static_cast<std::uint32_t>(dst.size());
  for (const Rule& r : src.rules())
    dst.push_back(r.is_terminal() ? r : Rule::pair(r.left + base, r.right + base));
  return base + src.start();
}

inline std::uint32_t push(std::vector<Rule>& dst, Rule r) {
  dst.push_back(r);
  return static_cast<std::uint32_t>(dst.size() - 1);
}

}  // namespace detail

/// Balanced grammar for a plain string. Uses at most one terminal per
/// distinct character plus |s|-1 pair rules.
inline Slp literal(std::string_view s) {
  if (s.empty()) throw Error(Errc::EmptyInput, "literal of an empty string");
  std::vector<Rule> rules;
  std::array<std::uint32_t, kMaxAlphabet> term;
  term.fill(Rule::kNone);
  std::vector<std::uint32_t> level;
  level.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (!is_alphabet_char(c))
      throw Error(Errc::BadCharacter, "character outside {0,1,2} at position " + std::to_string(i + 1), i + 1);
    auto& t = term[c - '0'];
    if (t == Rule::kNone) t = detail::push(rules, Rule::terminal(c));
    level.push_back(t);
  }
  while (level.size() > 1) {
    std::vector<std::uint32_t> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2)
      next.push_back(detail::push(rules, Rule::pair(level[i], level[i + 1])));
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }
  // The last reduction is always from two nodes, so the root is the last rule.
  return Slp(std::move(rules));
}

inline Slp concat(const Slp& a, const Slp& b) {
  std::vector<Rule> rules;
  rules.reserve(a.rule_count() + b.rule_count() + 1);
  const auto sa = detail::append_renumbered(rules, a);
  const auto sb = detail::append_renumbered(rules, b);
  rules.push_back(Rule::pair(sa, sb));
  return Slp(std::move(rules));
}

/// `a` repeated m times by binary exponentiation: at most 2*floor(log2 m)
/// additional rules.
inline Slp power(const Slp& a, std::uint64_t m) {
  if (m == 0) throw Error(Errc::PreconditionViolated, "power with exponent 0");
  if (m == 1) return a;
  // Reject before materializing squares that cannot exist.
  if (a.length() > kMaxLength / m)
    throw Error(Errc::LengthOverflow, "power expands beyond 2^63-1 characters", a.rule_count() + 1);
  std::vector<Rule> rules(a.rules());
  std::uint32_t cur = a.start();
  std::uint32_t acc = Rule::kNone;
  while (true) {
    if (m & 1U) acc = (acc == Rule::kNone) ? cur : detail::push(rules, Rule::pair(acc, cur));
    m >>= 1U;
    if (m == 0) break;
    cur = detail::push(rules, Rule::pair(cur, cur));
  }
  // The top bit of m is always set, so acc is the rule pushed last.
  return Slp(std::move(rules));
}

/// Reversal by swapping the children of every pair rule.
inline Slp reverse(const Slp& a) {
  std::vector<Rule> rules(a.rules());
  for (Rule& r : rules)
    if (!r.is_terminal()) std::swap(r.left, r.right);
  return Slp(std::move(rules));
}

/// Replaces every character c by cc; adds one rule per terminal rule.
inline Slp double_chars(const Slp& a) {
  if (a.length() > kMaxLength / 2)
    throw Error(Errc::LengthOverflow, "doubling expands beyond 2^63-1 characters", a.rule_count());
  std::vector<Rule> rules;
  rules.reserve(a.rule_count() * 2);
  std::vector<std::uint32_t> map(a.rule_count());
  for (std::size_t i = 0; i < a.rule_count(); ++i) {
    const Rule& r = a.rules()[i];
    if (r.is_terminal()) {
      const auto t = detail::push(rules, r);
      map[i] = detail::push(rules, Rule::pair(t, t));
    } else {
      map[i] = detail::push(rules, Rule::pair(map[r.left], map[r.right]));
    }
  }
  return Slp(std::move(rules));
}

/// Rewrites terminals carrying `from` to `to`.
inline Slp substitute(const Slp& a, char from, char to) {
  if (!is_alphabet_char(from) || !is_alphabet_char(to))
    throw Error(Errc::BadCharacter, "substitute with a character outside {0,1,2}");
  std::vector<Rule> rules(a.rules());
  for (Rule& r : rules)
    if (r.is_terminal() && r.ch == from) r.ch = to;
  return Slp(std::move(rules));
}

/// Full expansion, provided it has at most max_len characters. Throws TooLong
/// with the actual length otherwise.
inline std::string decompress(const Slp& a, Length max_len) {
  if (a.length() > max_len)
    throw Error(Errc::TooLong, "expansion has " + std::to_string(a.length()) + " characters", a.length());
  std::string out;
  out.reserve(static_cast<std::size_t>(a.length()));
  std::vector<std::uint32_t> stack{a.start()};
  while (!stack.empty()) {
    const Rule& r = a.rule(stack.back());
    stack.pop_back();
    if (r.is_terminal()) {
      out.push_back(r.ch);
    } else {
      stack.push_back(r.right);
      stack.push_back(r.left);
    }
  }
  return out;
}

}  // namespace cadence
