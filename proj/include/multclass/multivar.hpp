#pragma once

// Functions of u variables and their class checks on hypercube windows
// [1, N]^u: multiplicative, quasimultiplicative, semimultiplicative (with
// the shift vector a), Selberg factorization, the factor-system decision for
// Selberg multiplicativity, and the two-variable r-even theorem.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "multclass/arith_fn.hpp"
#include "multclass/classes.hpp"
#include "multclass/numtheory.hpp"
#include "multclass/rational.hpp"
#include "multclass/selberg_solver.hpp"

namespace multclass {

class MultiArithFn {
 public:
  using Eval = std::function<Rational(const Point&)>;

  MultiArithFn() = default;
  MultiArithFn(std::string name, unsigned arity, Eval eval, bool memoize = false)
      : name_(std::move(name)), arity_(arity), impl_(std::make_shared<Impl>(std::move(eval), memoize)) {
    if (arity_ == 0) throw std::invalid_argument("multclass: arity must be >= 1");
  }

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] unsigned arity() const { return arity_; }

  Rational operator()(const Point& n) const {
    if (n.size() != arity_) {
      throw std::invalid_argument("multclass: " + name_ + " expects " + std::to_string(arity_) + " arguments");
    }
    for (u64 v : n) {
      if (v == 0) throw std::domain_error("multclass: " + name_ + " evaluated at a zero coordinate");
    }
    return impl_->get(n);
  }

  [[nodiscard]] MultiArithFn memoized() const {
    auto self = impl_;
    return {name_, arity_, [self](const Point& n) { return self->get(n); }, true};
  }

  [[nodiscard]] MultiArithFn renamed(std::string name) const {
    MultiArithFn copy = *this;
    copy.name_ = std::move(name);
    return copy;
  }

 private:
  struct Impl {
    Impl(Eval e, bool memo) : eval(std::move(e)), memoize(memo) {}
    Rational get(const Point& n) const {
      if (!memoize) return eval(n);
      {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
      }
      Rational v = eval(n);
      std::lock_guard lock(mutex);
      if (cache.size() < ArithFn::kDefaultMemoLimit) cache.emplace(n, v);
      return v;
    }
    Eval eval;
    bool memoize;
    mutable std::mutex mutex;
    mutable std::map<Point, Rational> cache;
  };

  std::string name_;
  unsigned arity_ = 1;
  std::shared_ptr<const Impl> impl_;
};

/// f_1(n_1) * f_2(n_2) * ... * f_u(n_u).
inline MultiArithFn tensor(const std::vector<ArithFn>& factors) {
  if (factors.empty()) throw std::invalid_argument("multclass: tensor needs at least one factor");
  std::string name = "tensor(";
  for (std::size_t i = 0; i < factors.size(); ++i) name += (i ? "," : "") + factors[i].name();
  name += ")";
  return {std::move(name), static_cast<unsigned>(factors.size()), [factors](const Point& n) {
            Rational v(1);
            for (std::size_t i = 0; i < factors.size() && !v.is_zero(); ++i) v *= factors[i](n[i]);
            return v;
          }};
}

inline MultiArithFn scale_u(const MultiArithFn& f, const Rational& c) {
  if (c.is_zero()) throw std::domain_error("multclass: scale requires a nonzero constant");
  return {"scale:" + c.str() + "(" + f.name() + ")", f.arity(), [f, c](const Point& n) { return c * f(n); }};
}

inline MultiArithFn pointwise_product_u(const MultiArithFn& f, const MultiArithFn& g) {
  if (f.arity() != g.arity()) throw std::invalid_argument("multclass: arity mismatch");
  return {"product(" + f.name() + "," + g.name() + ")", f.arity(), [f, g](const Point& n) {
            const Rational v = f(n);
            return v.is_zero() ? v : v * g(n);
          }};
}

/// Componentwise divisor-sum convolution.
inline MultiArithFn dirichlet_u(const MultiArithFn& f, const MultiArithFn& g) {
  if (f.arity() != g.arity()) throw std::invalid_argument("multclass: arity mismatch");
  const unsigned u = f.arity();
  return MultiArithFn(
      "dirichlet(" + f.name() + "," + g.name() + ")", u,
      [f, g, u](const Point& n) {
        std::vector<std::vector<u64>> divs(u);
        for (unsigned i = 0; i < u; ++i) divs[i] = divisors(n[i]);
        Rational s;
        std::vector<std::size_t> idx(u, 0);
        Point d(u);
        Point rest(u);
        while (true) {
          for (unsigned i = 0; i < u; ++i) {
            d[i] = divs[i][idx[i]];
            rest[i] = n[i] / d[i];
          }
          const Rational fd = f(d);
          if (!fd.is_zero()) s += fd * g(rest);
          unsigned i = u;
          while (i > 0) {
            --i;
            if (++idx[i] < divs[i].size()) break;
            idx[i] = 0;
            if (i == 0) return s;
          }
        }
      },
      true);
}

/// 0 when both arguments are odd, 1 otherwise: Selberg multiplicative with
/// F_2(0,0) = 0 and every other factor 1, yet not semimultiplicative.
inline MultiArithFn remark_counterexample() {
  return {"remark-counterexample", 2,
          [](const Point& n) { return (n[0] % 2 != 0 && n[1] % 2 != 0) ? Rational(0) : Rational(1); }};
}

struct MultiWitness {
  Relation relation = Relation::product;
  Point m;
  Point n;
  Rational lhs;
  Rational rhs;
};

/// One step of the argument that pins a down: a nonzero value at `point`
/// forces a to divide it, leaving `bound` as the componentwise gcd so far.
struct ShiftConstraint {
  Point point;
  Rational value;
  Point bound;
};

struct MultiClassParams {
  Rational c;
  Point a;
  std::optional<FactorSystem> selberg;
};

struct MultiClassReport {
  Verdict verdict = Verdict::consistent;
  FnClass cls = FnClass::multiplicative;
  std::string method = "definition";
  unsigned arity = 1;
  u64 window = 0;
  std::optional<MultiClassParams> params;
  std::optional<MultiWitness> witness;
  /// Semimultiplicative: how the support forces a, ending at the value f(a).
  std::vector<ShiftConstraint> shift_chain;
  /// Selberg: inconsistent (refuted) or stalled (inconclusive) equations.
  std::vector<WindowEquation> equations;
};

namespace detail {

inline Point hadamard(const Point& x, const Point& y) {
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = checked::mul(x[i], y[i]);
  return out;
}

/// Every split k = m (.) n with gcd(prod m, prod n) = 1, m in lexicographic order.
inline std::vector<std::pair<Point, Point>> coprime_splits(const Point& k) {
  u64 prod = 1;
  for (u64 v : k) prod = checked::mul(prod, v);
  const Factorization fac = factorize(prod);
  const std::size_t w = fac.pairs.size();
  std::vector<std::pair<Point, Point>> out;
  out.reserve(std::size_t{1} << w);
  for (std::size_t mask = 0; mask < (std::size_t{1} << w); ++mask) {
    Point m(k.size(), 1);
    for (std::size_t j = 0; j < w; ++j) {
      if (!(mask >> j & 1U)) continue;
      const u64 p = fac.pairs[j].prime;
      for (std::size_t i = 0; i < k.size(); ++i) {
        u64 v = k[i];
        while (v % p == 0) {
          v /= p;
          m[i] *= p;
        }
      }
    }
    Point n(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) n[i] = k[i] / m[i];
    out.emplace_back(std::move(m), std::move(n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::optional<Point> least_support(const MultiArithFn& f, const std::vector<Point>& cube) {
  for (const auto& pt : cube) {
    if (!f(pt).is_zero()) return pt;
  }
  return std::nullopt;
}

inline MultiClassReport multi_zero_report(FnClass cls, unsigned arity, u64 window) {
  MultiClassReport r;
  r.verdict = Verdict::identically_zero;
  r.cls = cls;
  r.arity = arity;
  r.window = window;
  return r;
}

/// Scans f(a) f(a m n) = f(a m) f(a n) (with the given scale in place of f(a))
/// over window points a (.) k in lexicographic order, splits in m order.
inline std::optional<MultiWitness> first_shifted_failure(const MultiArithFn& f, const Point& a, const Rational& scale,
                                                         const std::vector<Point>& cube, Relation relation) {
  for (const auto& pt : cube) {
    Point k(pt.size());
    bool divisible = true;
    for (std::size_t i = 0; i < pt.size() && divisible; ++i) {
      divisible = pt[i] % a[i] == 0;
      if (divisible) k[i] = pt[i] / a[i];
    }
    if (!divisible) continue;
    const Rational lhs = scale * f(pt);
    for (const auto& [m, n] : coprime_splits(k)) {
      const Rational rhs = f(hadamard(a, m)) * f(hadamard(a, n));
      if (lhs != rhs) return MultiWitness{relation, m, n, lhs, rhs};
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline MultiClassReport check_multiplicative_u(const MultiArithFn& f, u64 window) {
  detail::require_window(window);
  const auto cube = detail::hypercube(f.arity(), window);
  if (!detail::least_support(f, cube)) return detail::multi_zero_report(FnClass::multiplicative, f.arity(), window);
  MultiClassReport r;
  r.cls = FnClass::multiplicative;
  r.arity = f.arity();
  r.window = window;
  const Point ones(f.arity(), 1);
  if (auto w = detail::first_shifted_failure(f, ones, Rational(1), cube, Relation::product)) {
    r.verdict = Verdict::refuted;
    r.witness = std::move(w);
    return r;
  }
  r.params = MultiClassParams{Rational(1), ones, std::nullopt};
  return r;
}

inline MultiClassReport check_quasimultiplicative_u(const MultiArithFn& f, u64 window) {
  detail::require_window(window);
  const auto cube = detail::hypercube(f.arity(), window);
  const auto least = detail::least_support(f, cube);
  if (!least) return detail::multi_zero_report(FnClass::quasimultiplicative, f.arity(), window);
  MultiClassReport r;
  r.cls = FnClass::quasimultiplicative;
  r.arity = f.arity();
  r.window = window;
  const Point ones(f.arity(), 1);
  const Rational f1 = f(ones);
  if (f1.is_zero()) {
    r.verdict = Verdict::refuted;
    r.witness = MultiWitness{Relation::unit_vanishes, ones, *least, f(*least), Rational(0)};
    return r;
  }
  if (auto w = detail::first_shifted_failure(f, ones, f1, cube, Relation::scaled_product)) {
    r.verdict = Verdict::refuted;
    r.witness = std::move(w);
    return r;
  }
  r.params = MultiClassParams{f1, ones, std::nullopt};
  return r;
}

/// a must divide every support point, so the only candidate is the
/// componentwise gcd of the support; it is accepted when f(a) != 0 and the
/// shifted product rule holds.
inline MultiClassReport check_semimultiplicative_u(const MultiArithFn& f, u64 window) {
  detail::require_window(window);
  const unsigned u = f.arity();
  const auto cube = detail::hypercube(u, window);
  MultiClassReport r;
  r.cls = FnClass::semimultiplicative;
  r.arity = u;
  r.window = window;

  std::optional<Point> bound;
  for (const auto& pt : cube) {
    const Rational v = f(pt);
    if (v.is_zero()) continue;
    if (!bound) {
      bound = pt;
      r.shift_chain.push_back({pt, v, *bound});
      continue;
    }
    Point next(u);
    for (unsigned i = 0; i < u; ++i) next[i] = gcd((*bound)[i], pt[i]);
    if (next != *bound) {
      bound = next;
      r.shift_chain.push_back({pt, v, *bound});
    }
  }
  if (!bound) return detail::multi_zero_report(FnClass::semimultiplicative, u, window);

  const Point& a = *bound;
  const Rational fa = f(a);
  if (fa.is_zero()) {
    r.verdict = Verdict::refuted;
    r.shift_chain.push_back({a, fa, a});
    r.witness = MultiWitness{Relation::shift_vanishes, a, r.shift_chain.front().point, fa, r.shift_chain.front().value};
    return r;
  }
  if (auto w = detail::first_shifted_failure(f, a, fa, cube, Relation::shifted_product)) {
    r.verdict = Verdict::refuted;
    r.witness = std::move(w);
    r.params = MultiClassParams{fa, a, std::nullopt};
    return r;
  }
  r.params = MultiClassParams{fa, a, std::nullopt};
  return r;
}

/// F_p(e) = f(a_1 p^{e_1 - nu_p(a_1)}, ...) / f(a), zero when some shift is
/// negative, for every prime up to the window and every exponent vector whose
/// argument stays inside it.
inline FactorSystem extract_selberg_u(const MultiArithFn& f, u64 window) {
  const MultiClassReport semi = check_semimultiplicative_u(f, window);
  if (semi.verdict != Verdict::consistent) {
    throw std::domain_error("multclass: extract_selberg_u requires a semimultiplicative-consistent function; " +
                            f.name() + " is " + to_string(semi.verdict) + " on window " + std::to_string(window));
  }
  const Point& a = semi.params->a;
  const unsigned u = f.arity();
  FactorSystem fs;
  fs.arity = u;
  fs.window = window;
  fs.constant = semi.params->c;
  for (u64 p : Sieve::instance().primes()) {
    if (p > window) break;
    std::vector<unsigned> base(u);
    std::vector<unsigned> top(u);
    for (unsigned i = 0; i < u; ++i) {
      base[i] = nu(p, a[i]);
      unsigned e = base[i];
      u64 arg = a[i];
      while (arg <= window / p) {
        arg *= p;
        ++e;
      }
      top[i] = e;
    }
    auto& table = fs.tables[p];
    Signature e(u, 0);
    while (true) {
      bool negative = false;
      Point arg(u);
      for (unsigned i = 0; i < u && !negative; ++i) {
        if (e[i] < base[i]) {
          negative = true;
        } else {
          arg[i] = checked::mul(a[i], checked::pow(p, e[i] - base[i]));
        }
      }
      table.emplace(e, negative ? Rational(0) : f(arg) / fs.constant);
      unsigned i = u;
      bool done = true;
      while (i > 0) {
        --i;
        if (++e[i] <= top[i]) {
          done = false;
          break;
        }
        e[i] = 0;
      }
      if (done) break;
    }
  }
  return fs;
}

inline MultiClassReport check_selberg_u(const MultiArithFn& f, u64 window) {
  detail::require_window(window);
  const SelbergSolveResult sol = solve_selberg(f, f.arity(), window);
  MultiClassReport r;
  r.cls = FnClass::selberg;
  r.method = "factor-system";
  r.arity = f.arity();
  r.window = window;
  r.verdict = sol.verdict;
  r.equations = sol.equations;
  if (sol.verdict == Verdict::consistent) {
    r.params = MultiClassParams{sol.system->constant, Point(f.arity(), 1), sol.system};
  }
  if (sol.verdict == Verdict::refuted && sol.witness) {
    r.witness = MultiWitness{Relation::factor_system, Point(f.arity(), 1), *sol.witness, sol.actual, sol.predicted};
  }
  return r;
}

/// Re-evaluates a multivariable witness; true when it still shows lhs != rhs.
inline bool witness_reproduces(const MultiArithFn& f, const MultiClassReport& report) {
  if (!report.witness) return false;
  const MultiWitness& w = *report.witness;
  const Point ones(f.arity(), 1);
  Rational lhs;
  Rational rhs;
  switch (w.relation) {
    case Relation::product:
      lhs = f(detail::hadamard(w.m, w.n));
      rhs = f(w.m) * f(w.n);
      break;
    case Relation::scaled_product:
      lhs = f(ones) * f(detail::hadamard(w.m, w.n));
      rhs = f(w.m) * f(w.n);
      break;
    case Relation::unit_vanishes:
      lhs = f(w.n);
      rhs = f(ones) * f(w.n);
      break;
    case Relation::support:
      if (std::all_of(w.n.begin(), w.n.end(), [&, i = std::size_t{0}](u64 v) mutable { return v % w.m[i++] == 0; })) {
        return false;
      }
      lhs = f(w.n);
      rhs = Rational(0);
      break;
    case Relation::shift_vanishes: {
      // w.m must be the componentwise gcd of the support and f must vanish there.
      std::optional<Point> g;
      for (const auto& pt : detail::hypercube(f.arity(), report.window)) {
        if (f(pt).is_zero()) continue;
        if (!g) {
          g = pt;
        } else {
          for (std::size_t i = 0; i < pt.size(); ++i) (*g)[i] = gcd((*g)[i], pt[i]);
        }
      }
      return g && *g == w.m && f(w.m).is_zero() && w.lhs.is_zero() && f(w.n) == w.rhs && !w.rhs.is_zero();
    }
    case Relation::shifted_product: {
      const Point& a = report.params->a;
      lhs = f(a) * f(detail::hadamard(a, detail::hadamard(w.m, w.n)));
      rhs = f(detail::hadamard(a, w.m)) * f(detail::hadamard(a, w.n));
      break;
    }
    case Relation::gcd_lcm:
      return false;
    case Relation::factor_system: {
      for (const auto& eq : report.equations) {
        if (f(eq.point) != eq.value) return false;
      }
      const SelbergSolveResult again = solve_selberg(f, f.arity(), report.window);
      return again.verdict == Verdict::refuted && again.witness == w.n && again.actual == w.lhs &&
             again.predicted == w.rhs && (w.lhs != w.rhs || again.obstruction == "zero-pattern");
    }
  }
  return lhs != rhs && lhs == w.lhs && rhs == w.rhs;
}

/// Outcome of checking the r-even / multiplicative-in-r theorem for f(n, r).
struct TwoVariableReport {
  u64 window = 0;
  bool even_in_n = true;
  /// (r, n) where f(n, r) != f((n, r), r).
  std::optional<std::pair<u64, u64>> even_witness;
  bool multiplicative_in_r = true;
  /// (n, r1, r2) where f(n, r1 r2) != f(n, r1) f(n, r2).
  std::optional<std::tuple<u64, u64, u64>> multiplicative_witness;
  MultiClassReport conclusion;
  /// Instances of the chain f(mn, rs) = f(mn, r) f(mn, s) = f((mn,r), r) f((mn,s), s)
  /// = f((m,r), r) f((n,s), s) = f(m, r) f(n, s) over (mr, ns) = 1.
  std::size_t chain_instances = 0;
  std::size_t chain_failures = 0;
  /// First failing instance (m, r, n, s) and the index of the failing step (1..4).
  std::optional<std::pair<std::array<u64, 4>, int>> chain_witness;

  [[nodiscard]] bool hypothesis_holds() const { return even_in_n && multiplicative_in_r; }
  [[nodiscard]] bool passed() const {
    return hypothesis_holds() && conclusion.verdict == Verdict::consistent && chain_failures == 0;
  }
};

/// f is read as f(n, r) with the modulus second.
inline TwoVariableReport check_two_variable_theorem(const MultiArithFn& f, u64 window) {
  if (f.arity() != 2) throw std::invalid_argument("multclass: two-variable theorem needs arity 2");
  detail::require_window(window);
  TwoVariableReport rep;
  rep.window = window;
  auto F = [&](u64 n, u64 r) { return f(Point{n, r}); };

  for (u64 r = 1; r <= window && rep.even_in_n; ++r) {
    for (u64 n = 1; n <= window; ++n) {
      if (F(n, r) != F(gcd(n, r), r)) {
        rep.even_in_n = false;
        rep.even_witness = std::make_pair(r, n);
        break;
      }
    }
  }
  for (u64 n = 1; n <= window && rep.multiplicative_in_r; ++n) {
    const ArithFn in_r("r->f(" + std::to_string(n) + ",r)", [&F, n](u64 r) { return F(n, r); });
    const ClassReport cr = check_multiplicative(in_r, window);
    if (cr.verdict == Verdict::refuted) {
      rep.multiplicative_in_r = false;
      rep.multiplicative_witness = std::make_tuple(n, cr.witness->m, cr.witness->n);
    }
  }
  rep.conclusion = check_multiplicative_u(f, window);

  for (u64 m = 1; m <= window; ++m) {
    for (u64 n = 1; m * n <= window; ++n) {
      const u64 mn = m * n;
      for (u64 r = 1; r <= window; ++r) {
        for (u64 s = 1; r * s <= window; ++s) {
          if (gcd(m * r, n * s) != 1) continue;
          ++rep.chain_instances;
          const Rational steps[5] = {
              F(mn, r * s),
              F(mn, r) * F(mn, s),
              F(gcd(mn, r), r) * F(gcd(mn, s), s),
              F(gcd(m, r), r) * F(gcd(n, s), s),
              F(m, r) * F(n, s),
          };
          for (int i = 0; i < 4; ++i) {
            if (steps[i] != steps[i + 1]) {
              ++rep.chain_failures;
              if (!rep.chain_witness) rep.chain_witness = std::make_pair(std::array<u64, 4>{m, r, n, s}, i + 1);
              break;
            }
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace multclass
