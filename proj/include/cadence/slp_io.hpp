#pragma once

// SLPv1 text format:
//
//   SLPv1
//   <m>
//   T <c>          terminal, c in {0,1,2}
//   N <j> <k>      pair of earlier rules, 1-based
//   ...
//
// m rule lines follow the count; rule m is the start symbol. Lines end in LF,
// the final LF is optional. Tokens are separated by exactly one space and
// numbers are canonical decimals; anything else is rejected.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cadence/error.hpp"
#include "cadence/slp.hpp"

namespace cadence {

inline constexpr std::string_view kSlpMagic = "SLPv1";

inline bool looks_like_slp(std::string_view text) {
  return text.substr(0, kSlpMagic.size()) == kSlpMagic &&
         (text.size() == kSlpMagic.size() || text[kSlpMagic.size()] == '\n');
}

namespace detail {

inline std::uint64_t parse_canonical(std::string_view tok, std::size_t line) {
  auto fail = [&] { return Error(Errc::ParseError, "line " + std::to_string(line) + ": bad number '" + std::string(tok) + "'", line); };
  if (tok.empty() || (tok.size() > 1 && tok[0] == '0')) throw fail();
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw fail();
  return v;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

}  // namespace detail

inline Slp parse_slp(std::string_view text) {
  const auto lines = detail::split_lines(text);
  auto fail = [](std::size_t line, const std::string& msg) { return Error(Errc::ParseError, "line " + std::to_string(line) + ": " + msg, line); };
  if (lines.empty() || lines[0] != kSlpMagic) throw fail(1, "missing SLPv1 header");
  if (lines.size() < 2) throw fail(2, "missing rule count");
  const std::uint64_t m = detail::parse_canonical(lines[1], 2);
  if (m == 0) throw Error(Errc::EmptyGrammar, "grammar has no rules");
  if (lines.size() != m + 2) throw fail(lines.size(), "expected " + std::to_string(m) + " rule lines");

  std::vector<Rule> rules;
  rules.reserve(m);
  for (std::uint64_t r = 0; r < m; ++r) {
    const std::size_t ln = r + 3;
    std::string_view line = lines[r + 2];
    if (line.size() == 3 && line[0] == 'T' && line[1] == ' ') {
      if (!is_alphabet_char(line[2])) throw fail(ln, "terminal outside {0,1,2}");
      rules.push_back(Rule::terminal(line[2]));
      continue;
    }
    if (line.size() < 5 || line[0] != 'N' || line[1] != ' ') throw fail(ln, "malformed rule");
    line.remove_prefix(2);
    const auto sp = line.find(' ');
    if (sp == std::string_view::npos) throw fail(ln, "pair rule needs two operands");
    const auto j = detail::parse_canonical(line.substr(0, sp), ln);
    const auto k = detail::parse_canonical(line.substr(sp + 1), ln);
    if (j == 0 || k == 0 || j > r || k > r)
      throw Error(Errc::ForwardReference, "rule " + std::to_string(r + 1) + " references a rule that does not precede it",
                  r + 1);
    rules.push_back(Rule::pair(static_cast<std::uint32_t>(j - 1), static_cast<std::uint32_t>(k - 1)));
  }
  return Slp(std::move(rules));
}

inline std::string format_slp(const Slp& slp) {
  std::string out;
  out.reserve(16 + slp.rule_count() * 12);
  out += kSlpMagic;
  out += '\n';
  out += std::to_string(slp.rule_count());
  out += '\n';
  for (const Rule& r : slp.rules()) {
    if (r.is_terminal()) {
      out += "T ";
      out += r.ch;
    } else {
      out += "N " + std::to_string(r.left + 1) + ' ' + std::to_string(r.right + 1);
    }
    out += '\n';
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ParseError, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

/// Plain-text string: one line over {0,1,2}, optional trailing LF.
inline std::string parse_plain(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (text.empty()) throw Error(Errc::EmptyInput, "empty plain string");
  for (std::size_t i = 0; i < text.size(); ++i)
    if (!is_alphabet_char(text[i]))
      throw Error(Errc::BadCharacter, "character outside {0,1,2} at position " + std::to_string(i + 1), i + 1);
  return std::string(text);
}

}  // namespace cadence
