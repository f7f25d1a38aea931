// multclass: evaluate arithmetic functions, classify them, run the suites.
//
// Exit status: 0 pass, 1 refutation or failed --expect, 2 usage error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "multclass/classes.hpp"
#include "multclass/fnspec.hpp"
#include "multclass/multivar.hpp"
#include "multclass/report.hpp"
#include "multclass/suites.hpp"

namespace {

using namespace multclass;
namespace rep = multclass::report;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

const char* kGrammar = R"(fn-spec grammar:
  expr := name[R] | name | comb:K(expr) | op(expr, expr)
  one variable: mobius phi one id zero c c_bar mu_bar g eta eta_mu eta_mu_bar r2 r4 r8
    c, c_bar, mu_bar, g, eta_mu, eta_mu_bar take R inline (c[4]) or from --r; eta takes --k
  combinators: scale:Q dilate:K kovern:K noverk:K gcdk:K lcmk:K
  operations: dirichlet(f,g) unitary(f,g) product(f,g)
  several variables: remark-counterexample ramanujan2 ramanujan_bar2 sum2 tensor(f,...)
  examples: c --r 4, dirichlet(c[6],phi), gcdk:6(c_bar[4]), tensor(mobius,phi))";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Range {
  u64 first = 1;
  u64 last = 1;
};

Range parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const u64 v = std::stoull(s, &used);
      if (used != s.size()) throw UsageError("");
      return {v, v};
    }
    const std::string a = s.substr(0, dots);
    const std::string b = s.substr(dots + 2);
    Range r;
    r.first = std::stoull(a, &used);
    if (used != a.size()) throw UsageError("");
    r.last = std::stoull(b, &used);
    if (used != b.size()) throw UsageError("");
    return r;
  } catch (const std::exception&) {
    throw UsageError("--n expects A..B or A, got '" + s + "'");
  }
}

void emit_json(const rep::Report& r) { std::cout << rep::to_json(r).dump(2) << '\n'; }

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct Common {
  std::string fn;
  std::optional<u64> r;
  std::optional<u64> k;
  bool json = false;
  bool no_timing = false;
};

rep::KeyValues fn_args(const Common& c) {
  rep::KeyValues args{{"fn", c.fn}};
  if (c.r) args.emplace_back("r", std::to_string(*c.r));
  if (c.k) args.emplace_back("k", std::to_string(*c.k));
  return args;
}

int run_eval(const Common& c, const std::string& range_text) {
  const auto t0 = std::chrono::steady_clock::now();
  const Range range = parse_range(range_text);
  if (range.first == 0 || range.last < range.first) throw UsageError("--n range must satisfy 1 <= A <= B");
  const fnspec::Node node = fnspec::parse(c.fn);
  const ArithFn f = fnspec::build(node, {c.r, c.k});
  const std::string formula = fnspec::provenance(node);

  std::vector<std::pair<u64, Rational>> rows;
  for (u64 n = range.first; n <= range.last; ++n) rows.emplace_back(n, f(n));

  if (!c.json) {
    std::ostringstream out;
    out << "n\tvalue\n";
    for (const auto& [n, v] : rows) out << n << '\t' << v.str() << '\n';
    std::cout << out.str();
    return kPass;
  }
  rep::Report r;
  r.command = "eval";
  r.args = fn_args(c);
  r.args.emplace_back("n", range_text);
  for (const auto& [n, v] : rows) r.results.push_back({{{"n", std::to_string(n)}}, {{"value", v.str()}}, formula});
  if (!c.no_timing) r.elapsed_ms = elapsed_since(t0);
  emit_json(r);
  return kPass;
}

void print_verdict(const rep::VerdictRecord& v) {
  std::cout << v.check << ": " << v.verdict << " (" << v.method << ")";
  if (v.c) std::cout << " c=" << *v.c;
  if (v.a) std::cout << " a=" << *v.a;
  std::cout << '\n';
  if (v.constant) std::cout << "  constant " << *v.constant << '\n';
  for (const auto& t : v.tables) {
    std::cout << "  F_" << t.prime << ':';
    for (const auto& [e, val] : t.entries) std::cout << ' ' << e << "->" << val;
    std::cout << '\n';
  }
  if (v.witness) {
    const auto& w = *v.witness;
    std::cout << "  witness " << w.relation << " at m=" << w.m << " n=" << w.n << ": " << w.lhs << " != " << w.rhs
              << '\n';
  }
  for (const auto& note : v.notes) std::cout << "  " << note << '\n';
  if (!v.equations.empty()) {
    std::cout << "  equations:";
    for (const auto& [p, val] : v.equations) std::cout << " f" << p << "=" << val;
    std::cout << '\n';
  }
}

std::string f_name_line(const std::string& fn, unsigned arity, u64 window) {
  return "fn " + fn + ", arity " + std::to_string(arity) + ", window " + std::to_string(window) + '\n';
}

std::optional<FnClass> class_from_name(const std::string& s) {
  for (auto c : {FnClass::multiplicative, FnClass::quasimultiplicative, FnClass::semimultiplicative, FnClass::selberg}) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

int run_classify(const Common& c, u64 window, std::optional<unsigned> arity, const std::vector<std::string>& expect) {
  const auto t0 = std::chrono::steady_clock::now();
  if (window < 2) throw UsageError("--window must be >= 2");
  std::vector<FnClass> wanted;
  for (const auto& e : expect) {
    auto cls = class_from_name(e);
    if (!cls) throw UsageError("--expect: unknown class '" + e + "'");
    wanted.push_back(*cls);
  }
  const fnspec::Node node = fnspec::parse(c.fn);
  const unsigned natural = fnspec::arity_of(node);
  const unsigned u = arity.value_or(natural);
  if (u != natural) {
    throw UsageError("'" + c.fn + "' takes " + std::to_string(natural) + " variable(s), --arity says " + std::to_string(u));
  }

  rep::Report r;
  r.command = "classify";
  r.args = fn_args(c);
  r.args.emplace_back("window", std::to_string(window));
  r.args.emplace_back("arity", std::to_string(u));
  if (!expect.empty()) {
    std::string joined;
    for (const auto& e : expect) joined += (joined.empty() ? "" : ",") + e;
    r.args.emplace_back("expect", joined);
  }

  std::vector<std::pair<FnClass, Verdict>> outcomes;
  if (u == 1) {
    const ArithFn f = fnspec::build(node, {c.r, c.k}).memoized();
    for (const auto& cr : {check_multiplicative(f, window), check_quasimultiplicative(f, window),
                           check_semimultiplicative(f, window), check_selberg(f, window)}) {
      outcomes.emplace_back(cr.cls, cr.verdict);
      r.verdicts.push_back(rep::verdict_of(cr));
    }
    auto rr = rep::verdict_of(check_rearick(f, window));
    rr.check = "rearick";
    r.verdicts.push_back(std::move(rr));
  } else {
    const MultiArithFn f = fnspec::build_multi(node, {c.r, c.k}).memoized();
    for (const auto& mr : {check_multiplicative_u(f, window), check_quasimultiplicative_u(f, window),
                           check_semimultiplicative_u(f, window), check_selberg_u(f, window)}) {
      outcomes.emplace_back(mr.cls, mr.verdict);
      r.verdicts.push_back(rep::verdict_of(mr));
    }
  }
  r.results.push_back({{{"fn", c.fn}, {"window", std::to_string(window)}},
                       {{"classes", [&] {
                           std::string s;
                           for (const auto& [cls, v] : outcomes) {
                             if (v != Verdict::consistent) continue;
                             if (!s.empty()) s += ',';
                             s += to_string(cls);
                           }
                           return s;
                         }()}},
                       fnspec::provenance(node)});

  std::vector<std::string> unmet;
  for (auto w : wanted) {
    for (const auto& [cls, v] : outcomes) {
      if (cls == w && v != Verdict::consistent) unmet.emplace_back(to_string(w));
    }
  }
  if (!unmet.empty()) {
    r.status = "fail";
    rep::VerdictRecord ev;
    ev.check = "expect";
    ev.verdict = "fail";
    ev.method = "assertion";
    for (const auto& s : unmet) ev.notes.push_back("expected " + s + ": not consistent");
    r.verdicts.push_back(std::move(ev));
  }
  if (!c.no_timing) r.elapsed_ms = elapsed_since(t0);

  if (c.json) {
    emit_json(r);
  } else {
    std::cout << f_name_line(c.fn, u, window);
    for (const auto& v : r.verdicts) print_verdict(v);
  }
  return unmet.empty() ? kPass : kFail;
}

int run_verify(const std::string& suite, u64 window, bool json, bool no_timing) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& reg = suites::registry();
  auto it = reg.find(suite);
  if (it == reg.end()) {
    std::string known;
    for (const auto& [name, fn] : reg) known += " " + name;
    throw UsageError("unknown suite '" + suite + "'; known:" + known);
  }
  if (window < 2) throw UsageError("--window must be >= 2");
  const suites::SuiteResult res = it->second(window);

  rep::Report r;
  r.command = "verify";
  r.args = {{"suite", suite}, {"window", std::to_string(window)}};
  for (const auto& rec : res.records) {
    r.results.push_back({{{"subject", rec.subject}}, {{"outcome", rec.outcome}}, rec.detail});
  }
  r.verdicts.push_back(rep::verdict_of(res));
  r.status = res.passed ? "pass" : "fail";
  if (!no_timing) r.elapsed_ms = elapsed_since(t0);

  if (json) {
    emit_json(r);
  } else {
    std::cout << "suite " << suite << " window " << window << ": " << (res.passed ? "pass" : "FAIL") << " ("
              << res.checks << " checks)\n";
    for (const auto& f : res.failures) std::cout << "  " << f << '\n';
  }
  return res.passed ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact classification of arithmetic functions: multiplicative, quasimultiplicative, "
               "semimultiplicative and Selberg multiplicative."};
  app.footer(kGrammar);
  app.require_subcommand(1);

  Common common;
  std::string range = "1..10";
  u64 window = 64;
  std::optional<unsigned> arity;
  std::vector<std::string> expect;
  std::string suite;

  auto add_fn_opts = [&](CLI::App* sub) {
    sub->add_option("--fn", common.fn, "fn-spec expression")->required();
    sub->add_option("--r", common.r, "default modulus for c, c_bar, mu_bar, g, eta_mu")->check(CLI::PositiveNumber);
    sub->add_option("--k", common.k, "default parameter for eta")->check(CLI::PositiveNumber);
    sub->add_flag("--json", common.json, "JSON report instead of text");
    sub->add_flag("--no-timing", common.no_timing, "omit timing from JSON reports");
  };

  auto* eval = app.add_subcommand("eval", "tabulate f(n) over a range (TSV by default)");
  add_fn_opts(eval);
  eval->add_option("--n", range, "range A..B")->capture_default_str();

  auto* classify = app.add_subcommand("classify", "run the four class checks on [1, N]^u");
  add_fn_opts(classify);
  classify->add_option("--window", window, "window N")->capture_default_str();
  classify->add_option("--arity", arity, "number of variables")->check(CLI::PositiveNumber);
  classify->add_option("--expect", expect, "exit 1 unless CLASS is consistent (repeatable)");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "suite name")->required();
  verify->add_option("--window", window, "window N")->capture_default_str();
  verify->add_flag("--json", common.json, "JSON report instead of text");
  verify->add_flag("--no-timing", common.no_timing, "omit timing from JSON reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*eval) return run_eval(common, range);
    if (*classify) return run_classify(common, window, arity, expect);
    return run_verify(suite, window, common.json, common.no_timing);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const fnspec::FnSpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
