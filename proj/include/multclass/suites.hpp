#pragma once

// Named verification suites over finite windows. Each suite sweeps one
// identity or class statement across a corpus and stops collecting failure
// messages after a few, but always counts every check it ran.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "multclass/arith_fn.hpp"
#include "multclass/classes.hpp"
#include "multclass/multivar.hpp"
#include "multclass/oracles.hpp"
#include "multclass/ramanujan.hpp"

namespace multclass::suites {

struct SuiteRecord {
  std::string subject;
  std::string outcome;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  u64 window = 0;
  bool passed = true;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  std::vector<SuiteRecord> records;

  SuiteResult() = default;
  SuiteResult(std::string n, u64 w) : name(std::move(n)), window(w) {}

  void fail(std::string message) {
    passed = false;
    if (failures.size() < 10) failures.push_back(std::move(message));
  }
};

/// mu, phi, 2mu, c_r and c-bar_r for r <= max_r, and closures of them under
/// Dirichlet convolution, pointwise product and the five compositions.
inline std::vector<ArithFn> standard_corpus(u64 max_r) {
  namespace rj = ramanujan;
  std::vector<ArithFn> out;
  const ArithFn mu = classical(Classical::mobius);
  const ArithFn phi = classical(Classical::euler_phi);
  out.push_back(mu);
  out.push_back(phi);
  out.push_back(scale(mu, Rational(2)));
  for (u64 r = 1; r <= max_r; ++r) out.push_back(rj::c_fn(r).memoized());
  for (u64 r = 1; r <= max_r; ++r) out.push_back(rj::c_bar_fn(r).memoized());
  const std::vector<u64> picks{4, 6, 12, 18};
  for (u64 r : picks) {
    if (r > max_r) continue;
    const ArithFn cr = rj::c_fn(r);
    const ArithFn cbr = rj::c_bar_fn(r);
    out.push_back(dirichlet(cr, cbr));
    out.push_back(dirichlet(cr, phi));
    out.push_back(pointwise_product(cr, cbr).memoized());
    out.push_back(pointwise_product(cr, mu).memoized());
    for (auto kind : {Composition::dilate_kn, Composition::k_over_n, Composition::n_over_k, Composition::gcd_k,
                      Composition::lcm_k}) {
      out.push_back(compose(cr, kind, 6).memoized());
      out.push_back(compose(cbr, kind, 4).memoized());
    }
  }
  return out;
}

/// Functions that are not semimultiplicative, to keep equivalence checks two-sided.
inline std::vector<ArithFn> control_corpus() {
  std::vector<ArithFn> out;
  out.emplace_back("n+1", [](u64 n) { return Rational(static_cast<i64>(n) + 1); });
  out.emplace_back("indicator{2,3}", [](u64 n) { return (n == 2 || n == 3) ? Rational(1) : Rational(0); });
  out.emplace_back("sigma-shift", [](u64 n) {
    i64 s = 0;
    for (u64 d : divisors(n)) s += static_cast<i64>(d);
    return Rational(s - 1);
  });
  out.emplace_back("n^2+1", [](u64 n) { return Rational(static_cast<i64>(n * n) + 1); });
  out.push_back(dirichlet(classical(Classical::one), ArithFn("n mod 3", [](u64 n) {
                            return Rational(static_cast<i64>(n % 3));
                          })));
  return out;
}

inline u64 corpus_modulus_limit(u64 window) { return std::min<u64>(window, 48); }

inline SuiteResult rearick(u64 window) {
  SuiteResult res{"rearick", window};
  auto corpus = standard_corpus(corpus_modulus_limit(window));
  for (const auto& f : corpus) {
    const ClassReport rr = check_rearick(f, window);
    const ClassReport sr = check_semimultiplicative(f, window);
    ++res.checks;
    res.records.push_back({f.name(), to_string(rr.verdict), std::string("semimultiplicative: ") + to_string(sr.verdict)});
    if (rr.verdict == Verdict::refuted) {
      std::ostringstream os;
      os << f.name() << ": gcd/lcm identity fails at m=" << rr.witness->m << ", n=" << rr.witness->n << " ("
         << rr.witness->lhs << " != " << rr.witness->rhs << ")";
      res.fail(os.str());
    }
    if (rr.verdict != sr.verdict) res.fail(f.name() + ": Rearick and shift criteria disagree");
  }
  for (const auto& f : control_corpus()) {
    const ClassReport rr = check_rearick(f, window);
    const ClassReport sr = check_semimultiplicative(f, window);
    ++res.checks;
    res.records.push_back({f.name(), to_string(rr.verdict), std::string("semimultiplicative: ") + to_string(sr.verdict)});
    if (rr.verdict != sr.verdict) res.fail(f.name() + ": Rearick and shift criteria disagree");
  }
  return res;
}

inline SuiteResult selberg_reconstruct(u64 window) {
  SuiteResult res{"selberg-reconstruct", window};
  for (const auto& f : standard_corpus(corpus_modulus_limit(window))) {
    ++res.checks;
    if (!detail::least_nonzero(f, window)) continue;  // C = 0 reconstructs it
    const SelbergFactorization s = extract_selberg(f, window);
    for (u64 n = 1; n <= window; ++n) {
      if (s.reconstruct(n) != f(n)) {
        res.fail(f.name() + ": reconstruction differs at n=" + std::to_string(n));
        break;
      }
    }
  }
  namespace rj = ramanujan;
  const u64 w2 = std::min<u64>(window, 24);
  const ArithFn mu = classical(Classical::mobius);
  const std::vector<MultiArithFn> multi{tensor({mu, mu}), scale_u(tensor({mu, mu}), Rational(2)),
                                        tensor({rj::c_fn(4), rj::c_fn(4)}), tensor({rj::c_bar_fn(12), rj::c_fn(9)}),
                                        rj::c_two_variable(), rj::c_bar_two_variable()};
  for (const auto& f : multi) {
    const FactorSystem fs = extract_selberg_u(f, w2);
    ++res.checks;
    for (const auto& pt : detail::hypercube(f.arity(), w2)) {
      if (fs.evaluate(pt) != f(pt)) {
        res.fail(f.name() + ": reconstruction differs at " + point_str(pt));
        break;
      }
    }
  }
  return res;
}

inline SuiteResult mu_bar_dual(u64 window) {
  SuiteResult res{"mu-bar-dual", window};
  for (u64 r = 1; r <= window; ++r) {
    for (u64 n = 1; n <= window; ++n) {
      ++res.checks;
      const i64 a = ramanujan::mu_bar(r, n);
      const i64 b = ramanujan::mu_bar_oracle(r, n);
      if (a != b) {
        res.fail("mu_bar(" + std::to_string(r) + "," + std::to_string(n) + ") = " + std::to_string(a) +
                 " but (g_r * mu) gives " + std::to_string(b));
      }
    }
  }
  return res;
}

inline SuiteResult unitary_identity(u64 window) {
  SuiteResult res{"unitary-identity", window};
  for (u64 r = 1; r <= window; ++r) {
    for (u64 n = 1; n <= window; ++n) {
      ++res.checks;
      const i64 a = ramanujan::c_bar(r, static_cast<i64>(n));
      const i64 b = ramanujan::c_bar_unitary(r, static_cast<i64>(n));
      if (a != b) {
        res.fail("c_bar(" + std::to_string(r) + "," + std::to_string(n) + ") = " + std::to_string(a) +
                 " but the unitary sum gives " + std::to_string(b));
      }
    }
  }
  return res;
}

inline SuiteResult quasi_identities(u64 window) {
  SuiteResult res{"quasi-identities", window};
  namespace rj = ramanujan;
  for (u64 r = 1; r <= window; ++r) {
    const i64 mu_r = mobius(r);
    const i64 mubar_r = rj::mu_bar_indicator(r);
    for (u64 m = 1; m <= window; ++m) {
      for (u64 n = 1; n <= window; ++n) {
        if (gcd(m, n) != 1) continue;
        const auto mi = static_cast<i64>(m);
        const auto ni = static_cast<i64>(n);
        res.checks += 2;
        if (rj::c(r, mi) * rj::c(r, ni) != mu_r * rj::c(r, mi * ni)) {
          res.fail("c identity fails at r=" + std::to_string(r) + ", m=" + std::to_string(m) + ", n=" +
                   std::to_string(n));
        }
        if (rj::c_bar(r, mi) * rj::c_bar(r, ni) != mubar_r * rj::c_bar(r, mi * ni)) {
          res.fail("c_bar identity fails at r=" + std::to_string(r) + ", m=" + std::to_string(m) + ", n=" +
                   std::to_string(n));
        }
      }
    }
  }
  return res;
}

inline constexpr double kOracleTolerance = 1e-6;

inline SuiteResult oracle_agreement(u64 window) {
  SuiteResult res{"oracle-agreement", window};
  double worst = 0;
  for (u64 r = 1; r <= window; ++r) {
    for (u64 n = 1; n <= window; ++n) {
      const auto ni = static_cast<i64>(n);
      const auto zc = oracle::c_oracle(r, ni);
      const auto zb = oracle::c_bar_oracle(r, ni);
      const double ec = std::max(std::abs(zc.real() - static_cast<double>(ramanujan::c(r, ni))), std::abs(zc.imag()));
      const double eb =
          std::max(std::abs(zb.real() - static_cast<double>(ramanujan::c_bar(r, ni))), std::abs(zb.imag()));
      worst = std::max({worst, ec, eb});
      res.checks += 2;
      if (ec > kOracleTolerance) res.fail("c(" + std::to_string(r) + "," + std::to_string(n) + ") off the exponential sum");
      if (eb > kOracleTolerance) {
        res.fail("c_bar(" + std::to_string(r) + "," + std::to_string(n) + ") off the exponential sum");
      }
    }
  }
  std::ostringstream os;
  os << "max abs error " << worst;
  res.records.push_back({"c, c_bar", res.passed ? "agree" : "disagree", os.str()});
  return res;
}

inline SuiteResult two_variable_theorem(u64 window) {
  SuiteResult res{"two-variable-theorem", window};
  for (const auto& f : {ramanujan::c_two_variable(), ramanujan::c_bar_two_variable()}) {
    const TwoVariableReport rep = check_two_variable_theorem(f, window);
    ++res.checks;
    res.records.push_back({f.name(), rep.passed() ? "holds" : "fails",
                           "chain instances " + std::to_string(rep.chain_instances)});
    if (!rep.even_in_n) res.fail(f.name() + ": not r-even in n");
    if (!rep.multiplicative_in_r) res.fail(f.name() + ": not multiplicative in r");
    if (rep.conclusion.verdict != Verdict::consistent) res.fail(f.name() + ": not multiplicative in (n, r)");
    if (rep.chain_failures != 0) res.fail(f.name() + ": proof chain breaks");
  }
  return res;
}

inline SuiteResult closure_properties(u64 window) {
  SuiteResult res{"closure-properties", window};
  namespace rj = ramanujan;
  const std::vector<ArithFn> base{classical(Classical::mobius), classical(Classical::euler_phi), rj::c_fn(4),
                                  rj::c_fn(12), rj::c_bar_fn(12), rj::c_bar_fn(18), rj::mu_bar_fn(8)};
  auto expect_semi = [&](const ArithFn& h) {
    ++res.checks;
    const ClassReport cr = check_semimultiplicative(h, window);
    if (cr.verdict == Verdict::refuted) res.fail(h.name() + " is not semimultiplicative on the window");
  };
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i; j < base.size(); ++j) {
      expect_semi(dirichlet(base[i], base[j]));
      expect_semi(pointwise_product(base[i], base[j]).memoized());
    }
    for (u64 k : {2, 3, 4, 6}) {
      for (auto kind : {Composition::dilate_kn, Composition::k_over_n, Composition::n_over_k, Composition::gcd_k,
                        Composition::lcm_k}) {
        expect_semi(compose(base[i], kind, k).memoized());
      }
    }
  }
  return res;
}

inline SuiteResult lahiri_rs(u64 window) {
  SuiteResult res{"lahiri-rs", window};
  for (unsigned s : {2U, 4U, 8U}) {
    const ArithFn rs = sum_of_squares(s).memoized();
    const ClassReport qr = check_quasimultiplicative(rs, window);
    ++res.checks;
    res.records.push_back({rs.name(), to_string(qr.verdict), qr.params ? "c = " + qr.params->c.str() : ""});
    if (qr.verdict != Verdict::consistent) res.fail(rs.name() + " is not quasimultiplicative on the window");
    if (qr.params && qr.params->c != rs(1)) res.fail(rs.name() + ": c differs from r_s(1)");
    const u64 brute_limit = s == 8 ? 12 : 40;
    for (u64 n = 1; n <= std::min(window, brute_limit); ++n) {
      ++res.checks;
      if (rs(n) != Rational(static_cast<i64>(oracle::sum_of_squares_brute(s, n)))) {
        res.fail(rs.name() + "(" + std::to_string(n) + ") disagrees with tuple enumeration");
      }
    }
  }
  return res;
}

inline SuiteResult ramanujan_table(u64 window) {
  SuiteResult res{"ramanujan-table", window};
  for (u64 p : Sieve::instance().primes()) {
    if (p > 13) break;
    for (unsigned k = 1; k <= 3; ++k) {
      const u64 pk = checked::pow(p, k);
      const u64 pk1 = pk / p;
      for (u64 n = 1; n <= std::max(window, 4 * pk); ++n) {
        ++res.checks;
        const auto pk_i = static_cast<i64>(pk);
        const auto pk1_i = static_cast<i64>(pk1);
        const i64 expected = n % pk == 0 ? pk_i - pk1_i : (n % pk1 == 0 ? -pk1_i : 0);
        if (ramanujan::c(pk, static_cast<i64>(n)) != expected) {
          res.fail("c(" + std::to_string(pk) + "," + std::to_string(n) + ") off the prime-power table");
        }
      }
    }
  }
  return res;
}

inline SuiteResult parameter_formulas(u64 window) {
  SuiteResult res{"parameter-formulas", window};
  namespace rj = ramanujan;
  const u64 max_r = std::min<u64>(window, 48);
  const u64 w = std::max<u64>(window, 2 * max_r);
  for (u64 r = 1; r <= max_r; ++r) {
    const ClassReport sc = check_semimultiplicative(rj::c_fn(r), w);
    const ClassReport sb = check_semimultiplicative(rj::c_bar_fn(r), w);
    const auto pc = rj::semimult_params_c(r);
    const auto pb = rj::semimult_params_c_bar(r);
    res.checks += 3;
    if (sc.verdict != Verdict::consistent || sc.params->a != pc.a || sc.params->c != Rational(pc.c)) {
      res.fail("c_" + std::to_string(r) + ": shift a differs from r/radical(r)");
    }
    if (sb.verdict != Verdict::consistent || sb.params->a != pb.a || sb.params->c != Rational(pb.c)) {
      res.fail("c_bar_" + std::to_string(r) + ": shift a differs from the product of primes p || r");
    }
    const bool mult = check_multiplicative(rj::c_bar_fn(r), w).verdict == Verdict::consistent;
    if (mult != (rj::mu_bar_indicator(r) == 1)) {
      res.fail("c_bar_" + std::to_string(r) + ": multiplicativity in n does not match r = 1 or r squareful");
    }
  }
  return res;
}

inline SuiteResult counterexample(u64 window) {
  SuiteResult res{"counterexample", window};
  const MultiArithFn f = remark_counterexample();
  const MultiClassReport sel = check_selberg_u(f, window);
  const MultiClassReport semi = check_semimultiplicative_u(f, window);
  res.checks += 2;
  if (sel.verdict != Verdict::consistent) {
    res.fail("no factor system found");
  } else {
    const FactorSystem& fs = *sel.params->selberg;
    for (const auto& [p, table] : fs.tables) {
      for (const auto& [e, v] : table) {
        const bool is_f200 = p == 2 && e == Signature{0, 0};
        if (v != Rational(is_f200 ? 0 : 1)) {
          res.fail("factor F_" + std::to_string(p) + signature_str(e) + " = " + v.str());
        }
      }
    }
    if (fs.constant != Rational(1)) res.fail("constant " + fs.constant.str());
  }
  if (semi.verdict != Verdict::refuted) res.fail("semimultiplicative check did not refute");
  res.records.push_back({f.name(), std::string("selberg ") + to_string(sel.verdict),
                         std::string("semimultiplicative ") + to_string(semi.verdict)});
  return res;
}

inline SuiteResult hierarchy(u64 window) {
  SuiteResult res{"hierarchy", window};
  auto corpus = standard_corpus(corpus_modulus_limit(window));
  for (const auto& f : control_corpus()) corpus.push_back(f);
  for (unsigned s : {2U, 4U, 8U}) corpus.push_back(sum_of_squares(s).memoized());
  for (const auto& f : corpus) {
    const auto m = check_multiplicative(f, window).verdict;
    const auto q = check_quasimultiplicative(f, window).verdict;
    const auto s = check_semimultiplicative(f, window).verdict;
    const auto sel = check_selberg(f, window).verdict;
    res.checks += 3;
    if (m == Verdict::consistent && q == Verdict::refuted) res.fail(f.name() + ": multiplicative but not quasi");
    if (q == Verdict::consistent && s == Verdict::refuted) res.fail(f.name() + ": quasi but not semi");
    if (s != sel) res.fail(f.name() + ": semimultiplicative and Selberg verdicts differ");
  }
  return res;
}

inline SuiteResult regular_count(u64 window) {
  SuiteResult res{"regular-count", window};
  for (u64 r = 1; r <= window; ++r) {
    u64 fast = 0;
    u64 brute = 0;
    for (u64 a = 0; a < r; ++a) {
      fast += is_regular_mod(a, r) ? 1 : 0;
      brute += oracle::is_regular_brute(a, r) ? 1 : 0;
    }
    u64 formula = 1;
    for (const auto& pp : factorize(r).pairs) formula *= euler_phi(checked::pow(pp.prime, pp.exponent)) + 1;
    ++res.checks;
    if (fast != brute || brute != formula) res.fail("regular count mismatch at r=" + std::to_string(r));
  }
  return res;
}

using SuiteFn = std::function<SuiteResult(u64)>;

inline const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites{
      {"rearick", rearick},
      {"selberg-reconstruct", selberg_reconstruct},
      {"mu-bar-dual", mu_bar_dual},
      {"unitary-identity", unitary_identity},
      {"quasi-identities", quasi_identities},
      {"oracle-agreement", oracle_agreement},
      {"two-variable-theorem", two_variable_theorem},
      {"closure-properties", closure_properties},
      {"lahiri-rs", lahiri_rs},
      {"ramanujan-table", ramanujan_table},
      {"parameter-formulas", parameter_formulas},
      {"counterexample", counterexample},
      {"hierarchy", hierarchy},
      {"regular-count", regular_count},
  };
  return suites;
}

}  // namespace multclass::suites
