#pragma once

// Brute-force reference computations used to cross-check the exact
// implementations: exponential sums for c_r and c-bar_r, regularity by
// search, and direct tuple enumeration for sums of squares. Nothing in the
// library proper depends on this header.

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

#include "multclass/numtheory.hpp"

namespace multclass::oracle {

/// Exists x in [0, r) with a^2 x = a (mod r).
inline bool is_regular_brute(u64 a, u64 r) {
  a %= r;
  const u64 a2 = (a * a) % r;
  for (u64 x = 0; x < r; ++x) {
    if ((a2 * x) % r == a) return true;
  }
  return false;
}

namespace detail {

/// exp(2 pi i (a n mod r) / r) summed over the selected residues a.
template <typename Pred>
std::complex<double> exp_sum(u64 r, i64 n, const Pred& include) {
  const u64 nm = static_cast<u64>(((n % static_cast<i64>(r)) + static_cast<i64>(r)) % static_cast<i64>(r));
  std::complex<double> s = 0.0;
  for (u64 a = 0; a < r; ++a) {
    if (!include(a)) continue;
    const u64 k = (a * nm) % r;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(r);
    s += std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return s;
}

}  // namespace detail

/// Ramanujan's sum from its definition over residues coprime to r.
inline std::complex<double> c_oracle(u64 r, i64 n) {
  return detail::exp_sum(r, n, [r](u64 a) { return std::gcd(a, r) == 1; });
}

/// The regular-residue analogue from its definition.
inline std::complex<double> c_bar_oracle(u64 r, i64 n) {
  return detail::exp_sum(r, n, [r](u64 a) { return is_regular_brute(a, r); });
}

/// Number of s-tuples of integers whose squares sum to n, by nested search.
inline u64 sum_of_squares_brute(unsigned s, u64 n) {
  const auto bound = static_cast<i64>(std::sqrt(static_cast<double>(n))) + 1;
  u64 count = 0;
  std::vector<i64> x(s, -bound);
  while (true) {
    u64 total = 0;
    for (i64 v : x) total += static_cast<u64>(v * v);
    if (total == n) ++count;
    unsigned i = s;
    while (i > 0) {
      --i;
      if (++x[i] <= bound) break;
      x[i] = -bound;
      if (i == 0) return count;
    }
  }
}

}  // namespace multclass::oracle
