#pragma once

// Ramanujan's sum c_r(n), its analogue over regular residues, the helper
// functions g_r and mu-bar_r, r-even / r-periodic profiles and the closed-form
// semimultiplicativity parameters of both families.

#include <cstdlib>
#include <optional>
#include <string>
#include <tuple>
#include <utility>

#include "multclass/arith_fn.hpp"
#include "multclass/multivar.hpp"
#include "multclass/numtheory.hpp"

namespace multclass::ramanujan {

namespace detail {

inline u64 abs_mod_gcd(i64 n, u64 r) {
  // (0, r) = r, and c_r(-n) = c_r(n).
  const u64 m = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
  return gcd(m % r, r);
}

inline void require_modulus(u64 r) {
  if (r == 0) throw std::domain_error("multclass: modulus r must be >= 1");
}

}  // namespace detail

/// c_r(n) = sum over d | (n, r) of d * mu(r/d).
inline i64 c(u64 r, i64 n) {
  detail::require_modulus(r);
  const u64 g = detail::abs_mod_gcd(n, r);
  i64 s = 0;
  for (u64 d : divisors(g)) s = checked::add(s, checked::mul(static_cast<i64>(d), mobius(r / d)));
  return s;
}

/// Characteristic function of the unitary divisors of r.
inline i64 g(u64 r, u64 n) {
  detail::require_modulus(r);
  return is_unitary_divisor(n, r) ? 1 : 0;
}

/// mu-bar_r(n): multiplicative in n, defined prime by prime from how p divides r.
inline i64 mu_bar(u64 r, u64 n) {
  detail::require_modulus(r);
  if (n == 0) throw std::domain_error("multclass: mu_bar requires n >= 1");
  i64 v = 1;
  for (const auto& pp : factorize(n).pairs) {
    const unsigned a = nu(pp.prime, r);
    const unsigned j = pp.exponent;
    i64 local = 0;
    if (a == 0) {
      local = j == 1 ? -1 : 0;
    } else if (a == 1) {
      local = j == 2 ? -1 : 0;
    } else {
      local = j == 1 ? -1 : j == a ? 1 : j == a + 1 ? -1 : 0;
    }
    if (local == 0) return 0;
    v *= local;
  }
  return v;
}

/// mu-bar_r as the Moebius inverse of g_r: (g_r * mu)(n).
inline i64 mu_bar_oracle(u64 r, u64 n) {
  detail::require_modulus(r);
  i64 s = 0;
  for (u64 d : divisors(n)) s += g(r, d) * mobius(n / d);
  return s;
}

/// c-bar_r(n) = sum over d | (n, r) of d * mu-bar_r(r/d).
inline i64 c_bar(u64 r, i64 n) {
  detail::require_modulus(r);
  const u64 gg = detail::abs_mod_gcd(n, r);
  i64 s = 0;
  for (u64 d : divisors(gg)) s = checked::add(s, checked::mul(static_cast<i64>(d), mu_bar(r, r / d)));
  return s;
}

/// c-bar_r(n) as the unitary sum over d || r of c_d(n).
inline i64 c_bar_unitary(u64 r, i64 n) {
  detail::require_modulus(r);
  i64 s = 0;
  for (u64 d : unitary_divisors(r)) s = checked::add(s, c(d, n));
  return s;
}

/// 1 when r = 1 or r is squareful, else 0.
inline i64 mu_bar_indicator(u64 r) {
  detail::require_modulus(r);
  return (r == 1 || is_squareful(r)) ? 1 : 0;
}

struct SemimultParams {
  u64 a = 1;
  i64 c = 0;
  friend bool operator==(const SemimultParams&, const SemimultParams&) = default;
};

/// For n -> c_r(n): a = r / radical(r), c = c_r(a).
inline SemimultParams semimult_params_c(u64 r) {
  detail::require_modulus(r);
  const u64 a = r / radical(r);
  return {a, c(r, static_cast<i64>(a))};
}

/// For n -> c-bar_r(n): a = product of the primes p with p || r, c = c-bar_r(a).
inline SemimultParams semimult_params_c_bar(u64 r) {
  detail::require_modulus(r);
  u64 a = 1;
  for (const auto& pp : factorize(r).pairs) {
    if (pp.exponent == 1) a *= pp.prime;
  }
  return {a, c_bar(r, static_cast<i64>(a))};
}

struct EvenFnProfile {
  u64 modulus = 1;
  u64 periods = 2;
  bool is_periodic = true;
  bool is_even = true;
  /// (n, n + r, f(n), f(n + r))
  std::optional<std::tuple<u64, u64, Rational, Rational>> periodic_witness;
  /// (n, (n, r), f(n), f((n, r)))
  std::optional<std::tuple<u64, u64, Rational, Rational>> even_witness;
};

/// Periodicity over `periods` periods and evenness f(n) = f((n, r)) on [1, periods * r].
inline EvenFnProfile even_profile(const ArithFn& f, u64 r, u64 periods = 4) {
  detail::require_modulus(r);
  if (periods < 2) throw std::invalid_argument("multclass: even_profile needs at least 2 periods");
  EvenFnProfile p;
  p.modulus = r;
  p.periods = periods;
  const u64 last = checked::mul(periods, r);
  for (u64 n = 1; n + r <= last; ++n) {
    const Rational a = f(n);
    const Rational b = f(n + r);
    if (a != b) {
      p.is_periodic = false;
      p.periodic_witness = std::make_tuple(n, n + r, a, b);
      break;
    }
  }
  for (u64 n = 1; n <= last; ++n) {
    const u64 gg = gcd(n, r);
    const Rational a = f(n);
    const Rational b = f(gg);
    if (a != b) {
      p.is_even = false;
      p.even_witness = std::make_tuple(n, gg, a, b);
      break;
    }
  }
  return p;
}

// ArithFn / MultiArithFn adapters.

inline ArithFn c_fn(u64 r) {
  detail::require_modulus(r);
  return {"c[" + std::to_string(r) + "]", [r](u64 n) { return Rational(c(r, static_cast<i64>(n))); }};
}

inline ArithFn c_bar_fn(u64 r) {
  detail::require_modulus(r);
  return {"c_bar[" + std::to_string(r) + "]", [r](u64 n) { return Rational(c_bar(r, static_cast<i64>(n))); }};
}

inline ArithFn mu_bar_fn(u64 r) {
  detail::require_modulus(r);
  return {"mu_bar[" + std::to_string(r) + "]", [r](u64 n) { return Rational(mu_bar(r, n)); }};
}

inline ArithFn g_fn(u64 r) {
  detail::require_modulus(r);
  return {"g[" + std::to_string(r) + "]", [r](u64 n) { return Rational(g(r, n)); }};
}

/// n -> eta_r(n) * mu(r/n) (zero when n does not divide r).
inline ArithFn eta_mu_twist(u64 r) {
  return {"eta_mu[" + std::to_string(r) + "]", [r](u64 n) {
            return r % n == 0 ? Rational(static_cast<i64>(n) * mobius(r / n)) : Rational(0);
          }};
}

/// n -> eta_r(n) * mu-bar_r(r/n).
inline ArithFn eta_mu_bar_twist(u64 r) {
  return {"eta_mu_bar[" + std::to_string(r) + "]", [r](u64 n) {
            return r % n == 0 ? Rational(static_cast<i64>(n) * mu_bar(r, r / n)) : Rational(0);
          }};
}

/// (n, r) -> c_r(n).
inline MultiArithFn c_two_variable() {
  return {"ramanujan2", 2, [](const Point& p) { return Rational(c(p[1], static_cast<i64>(p[0]))); }};
}

/// (n, r) -> c-bar_r(n).
inline MultiArithFn c_bar_two_variable() {
  return {"ramanujan_bar2", 2, [](const Point& p) { return Rational(c_bar(p[1], static_cast<i64>(p[0]))); }};
}

}  // namespace multclass::ramanujan
