#pragma once

// Command-line front end. run_cli takes the arguments after the program name
// and writes to the given streams, so tests can drive it in-process.
//
// Exit codes: 0 found / agree / success, 1 not found / disagree,
// 2 usage or input error, 3 capability error.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cadence/cadence.hpp"

namespace cadence::cli {

using json = nlohmann::json;

enum Exit : int { kFound = 0, kNotFound = 1, kUsage = 2, kCapability = 3 };

inline int exit_code(Errc code) {
  switch (code) {
    case Errc::AlphabetMismatch:
    case Errc::TooLarge:
    case Errc::TooLong:
    case Errc::Unsupported:
    case Errc::InternalError:
      return kCapability;
    default:
      return kUsage;
  }
}

struct Input {
  std::string format;  // "plain" or "slp"
  std::optional<Slp> slp;
  std::string text;  // plain backend only
  StringView view() const { return slp ? StringView::compressed(*slp) : StringView::plain(text); }
  Length size() const { return slp ? slp->length() : text.size(); }
};

inline Input load_input(const std::string& path, const std::string& format) {
  const std::string raw = read_file(path);
  const bool as_slp = format == "slp" || (format == "auto" && looks_like_slp(raw));
  Input in;
  if (as_slp) {
    in.format = "slp";
    in.slp = parse_slp(raw);
  } else {
    in.format = "plain";
    in.text = parse_plain(raw);
  }
  return in;
}

/// Plain characters of the input, expanding a grammar only up to max_len.
inline std::string expand(const Input& in, Length max_len) {
  if (!in.slp) {
    if (in.text.size() > max_len)
      throw Error(Errc::TooLong, "input has " + std::to_string(in.text.size()) + " characters", in.text.size());
    return in.text;
  }
  return decompress(*in.slp, max_len);
}

/// "lo..hi" with 1-based inclusive bounds.
inline Interval parse_range(const std::string& s) {
  const auto dots = s.find("..");
  auto num = [&](const std::string& t) -> Index {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(t, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (t.empty() || used != t.size()) throw Error(Errc::ParseError, "bad interval '" + s + "', expected lo..hi");
    return v;
  };
  if (dots == std::string::npos) throw Error(Errc::ParseError, "bad interval '" + s + "', expected lo..hi");
  return Interval{num(s.substr(0, dots)), num(s.substr(dots + 2))};
}

/// Comma list of sizes with optional k/M/G suffixes, or "lo..hi" doubling
/// from lo while <= hi.
inline std::vector<Length> parse_sizes(const std::string& s) {
  auto one = [&](std::string t) -> Length {
    Length mult = 1;
    if (!t.empty()) {
      switch (t.back()) {
        case 'k': case 'K': mult = 1000; break;
        case 'M': mult = 1000000; break;
        case 'G': mult = 1000000000; break;
        default: break;
      }
      if (mult != 1) t.pop_back();
    }
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(t, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (t.empty() || used != t.size() || v == 0) throw Error(Errc::ParseError, "bad size '" + t + "'");
    return v * mult;
  };
  std::vector<Length> out;
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const Length lo = one(s.substr(0, dots));
    const Length hi = one(s.substr(dots + 2));
    for (Length n = lo; n <= hi; n *= 2) out.push_back(n);
  } else {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(one(tok));
  }
  if (out.empty()) throw Error(Errc::ParseError, "no sizes given");
  return out;
}

inline Mode parse_mode(const std::string& m) {
  if (m == "compressed") return Mode::Compressed;
  if (m == "uncompressed") return Mode::Uncompressed;
  return Mode::Auto;
}

inline json witness_json(const Witness& w) {
  return json{{"i", w.i}, {"d", w.d}, {"k", w.k}, {"char", std::string(1, w.ch)}, {"kind", to_string(w.kind)}};
}

inline json sidecar_json(const GadgetInstance& g) {
  auto iv = [](const std::optional<Interval>& r) { return r ? json::array({r->lo, r->hi}) : json(nullptr); };
  return json{{"kind", to_string(g.kind)}, {"k", g.k},         {"n", g.slp.length()},   {"L", iv(g.L)},
              {"R", iv(g.R)},              {"plen", g.plen}, {"pplen", g.pplen},      {"swapped", g.swapped}};
}

struct DetectArgs {
  std::string input, format = "auto", task = "3cadence", L, R, mode = "auto";
  bool oracle = false;
  Length max_len = kOracleMaxLength;
};

inline int cmd_detect(const DetectArgs& a, std::ostream& out) {
  const Input in = load_input(a.input, a.format);
  QueryStats stats;
  const StringView v = in.view().with_stats(&stats);
  std::optional<Witness> w;
  DetectionTrace trace;
  const auto t0 = std::chrono::steady_clock::now();

  if (a.task != "3cadence" && a.task != "lr3" && a.task != "3subcadence")
    throw Error(Errc::ParseError, "unknown task '" + a.task + "'");
  if (a.task != "3subcadence" && !v.is_binary())
    throw Error(Errc::AlphabetMismatch, "task " + a.task + " needs a binary string");
  Interval L, R;
  if (a.task == "lr3") {
    if (a.L.empty() || a.R.empty()) throw Error(Errc::ParseError, "task lr3 needs --L and --R");
    L = parse_range(a.L);
    R = parse_range(a.R);
  }

  if (a.oracle) {
    const std::string s = expand(in, std::min<Length>(a.max_len, kOracleMaxLength));
    stats.char_accesses += s.size();
    OracleReport rep;
    if (a.task == "3cadence") rep = enum_cadences(s);
    else if (a.task == "lr3") rep = enum_lr(s, L, R);
    else rep = enum_subcadences(s);
    if (!rep.empty()) w = rep.witnesses.front();
    if (a.task == "3subcadence" && w) w->kind = WitnessKind::SubCadence;
  } else if (a.task == "3cadence") {
    w = detect_3cadence(v, DetectOptions{parse_mode(a.mode)}, &trace);
  } else if (a.task == "lr3") {
    w = detect_lr(v, L, R);
  } else {
    if (!v.is_binary()) throw Error(Errc::AlphabetMismatch, "3subcadence needs a binary string");
    w = detect_3subcadence(v);
  }
  if (w) certify(in.view(), *w);

  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  json j;
  j["found"] = w.has_value();
  j["witness"] = w ? witness_json(*w) : json(nullptr);
  j["stats"] = {{"char_accesses", stats.accesses()}, {"step_iterations", stats.steps}, {"elapsed_ms", ms}};
  j["input"] = {{"format", in.format}, {"n", in.size()}, {"rules", in.slp ? json(in.slp->rule_count()) : json(nullptr)}};
  out << j.dump() << '\n';
  return w ? kFound : kNotFound;
}

struct GadgetArgs {
  std::string kind, p, pprime, out;
  Index k = 3;
};

inline Slp load_operand(const std::string& path) {
  const Input in = load_input(path, "auto");
  return in.slp ? *in.slp : literal(in.text);
}

inline int cmd_gadget(const GadgetArgs& a, std::ostream& out) {
  const Slp p = load_operand(a.p);
  const Slp pp = load_operand(a.pprime);
  if (p.alphabet_size() != 2 || pp.alphabet_size() != 2)
    throw Error(Errc::BadCharacter, "gadget operands must be binary");
  std::optional<GadgetInstance> g;
  if (a.kind == "char1") g = gadget_cadence_char1(p, pp, a.k);
  else if (a.kind == "ternary3") g = gadget_cadence_ternary3(p, pp);
  else if (a.kind == "lr3") g = gadget_lr3(p, pp);
  else throw Error(Errc::ParseError, "unknown gadget kind '" + a.kind + "'");
  const json side = sidecar_json(*g);
  write_file(a.out + ".slp", format_slp(g->slp));
  write_file(a.out + ".json", side.dump(2) + "\n");
  out << side.dump() << '\n';
  return kFound;
}

inline int cmd_verify(const std::string& path, Length max_len, std::ostream& out) {
  const Input in = load_input(path, "auto");
  const std::string s = expand(in, std::min<Length>(max_len, kOracleMaxLength));
  const StringView v = in.view();
  if (!v.is_binary()) throw Error(Errc::AlphabetMismatch, "verify needs a binary string");
  const auto w = detect_3cadence(v);
  const OracleReport rep = enum_cadences(s);
  const bool agree = w.has_value() == !rep.empty() && (!w || rep.contains(w->i, w->d));
  out << json{{"agree", agree}, {"detector", w.has_value()}, {"oracle", !rep.empty()}, {"oracle_count", rep.size()},
              {"n", s.size()}}
             .dump()
      << '\n';
  return agree ? kFound : kNotFound;
}

inline int cmd_decompress(const std::string& path, Length max_len, std::ostream& out) {
  const Input in = load_input(path, "auto");
  out << expand(in, max_len) << '\n';
  return kFound;
}

struct BenchArgs {
  std::string family = "random", sizes = "1k..64k", mode = "auto";
  int trials = 3;
  std::uint64_t seed = 1;
};

inline StringView bench_instance(const std::string& family, Length n, std::mt19937_64& rng) {
  if (family == "random") {
    std::string s(n, '0');
    for (char& c : s) c = static_cast<char>('0' + (rng() & 1U));
    return StringView::plain(std::move(s));
  }
  if (family == "allzero") return StringView::compressed(power(literal("0"), n));
  if (family == "gadget") {
    // char1 with k = 3 has length 3(6p + 1).
    const Length p = std::max<Length>(1, (n / 3 - 1) / 6);
    auto operand = [&] {
      std::string s(std::min<Length>(p, 64), '0');
      for (char& c : s) c = static_cast<char>('0' + (rng() & 1U));
      return p <= 64 ? literal(s) : concat(literal(s), power(literal("0"), p - 64));
    };
    return StringView::compressed(gadget_cadence_char1(operand(), operand(), 3).slp);
  }
  throw Error(Errc::ParseError, "unknown bench family '" + family + "'");
}

inline int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.trials < 1) throw Error(Errc::ParseError, "--trials must be positive");
  std::mt19937_64 rng(a.seed);
  out << "n,char_accesses,iterations,elapsed_ms\n";
  for (const Length n : parse_sizes(a.sizes)) {
    double acc = 0, it = 0, ms = 0;
    Length actual = 0;
    for (int t = 0; t < a.trials; ++t) {
      const StringView base = bench_instance(a.family, n, rng);
      actual = static_cast<Length>(base.size());
      QueryStats st;
      DetectionTrace tr;
      const auto t0 = std::chrono::steady_clock::now();
      detect_3cadence(base.with_stats(&st), DetectOptions{parse_mode(a.mode)}, &tr);
      ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      acc += static_cast<double>(st.accesses());
      it += static_cast<double>(tr.total_steps());
    }
    out << actual << ',' << acc / a.trials << ',' << it / a.trials << ',' << ms / a.trials << '\n';
  }
  return kFound;
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cadence detection on plain and grammar-compressed binary strings", "cadence"};
  app.require_subcommand(1);

  DetectArgs d;
  auto* detect = app.add_subcommand("detect", "Find a 3-cadence, L-R-3-cadence or 3-sub-cadence");
  detect->add_option("--input", d.input, "Input file")->required();
  detect->add_option("--format", d.format, "plain, slp or auto (sniff the SLPv1 header)")
      ->check(CLI::IsMember({"plain", "slp", "auto"}));
  detect->add_option("--task", d.task, "3cadence, lr3 or 3subcadence")
      ->check(CLI::IsMember({"3cadence", "lr3", "3subcadence"}));
  detect->add_option("--L", d.L, "First-index interval lo..hi (lr3)");
  detect->add_option("--R", d.R, "Last-index interval lo..hi (lr3)");
  detect->add_flag("--oracle", d.oracle, "Brute force on the expanded string");
  detect->add_option("--max-len", d.max_len, "Expansion bound for --oracle");
  detect->add_option("--mode", d.mode, "auto, compressed or uncompressed")
      ->check(CLI::IsMember({"auto", "compressed", "uncompressed"}));

  GadgetArgs g;
  auto* gadget = app.add_subcommand("gadget", "Write a reduction instance as OUT.slp and OUT.json");
  gadget->add_option("--kind", g.kind, "char1, ternary3 or lr3")->required()->check(CLI::IsMember({"char1", "ternary3", "lr3"}));
  gadget->add_option("--k", g.k, "Cadence length (char1)");
  gadget->add_option("--p", g.p, "File holding P")->required();
  gadget->add_option("--pprime", g.pprime, "File holding P'")->required();
  gadget->add_option("-o,--out", g.out, "Output prefix")->required();

  std::string vin;
  Length vmax = kOracleMaxLength;
  auto* verify = app.add_subcommand("verify", "Compare the detector with the brute-force oracle");
  verify->add_option("--input", vin, "Input file")->required();
  verify->add_option("--max-len", vmax, "Expansion bound");

  std::string din;
  Length dmax = 1000000;
  auto* dec = app.add_subcommand("decompress", "Print the expansion of an input");
  dec->add_option("--input", din, "Input file")->required();
  dec->add_option("--max-len", dmax, "Expansion bound");

  BenchArgs b;
  auto* bench = app.add_subcommand("bench", "CSV of access and iteration counts per size");
  bench->add_option("--family", b.family, "random, allzero or gadget")->check(CLI::IsMember({"random", "allzero", "gadget"}));
  bench->add_option("--sizes", b.sizes, "Comma list (k/M/G suffixes) or lo..hi doubling");
  bench->add_option("--trials", b.trials, "Instances per size");
  bench->add_option("--seed", b.seed, "Random seed");
  bench->add_option("--mode", b.mode, "auto, compressed or uncompressed")
      ->check(CLI::IsMember({"auto", "compressed", "uncompressed"}));

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*detect) return cmd_detect(d, out);
    if (*gadget) return cmd_gadget(g, out);
    if (*verify) return cmd_verify(vin, vmax, out);
    if (*dec) return cmd_decompress(din, dmax, out);
    return cmd_bench(b, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.code());
  }
}

}  // namespace cadence::cli
