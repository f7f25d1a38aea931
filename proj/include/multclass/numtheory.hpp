#pragma once

// Integer primitives: prime sieve, factorization, valuations, divisor
// structure and regular residues. Arguments are unsigned 64-bit; products
// that could overflow go through checked arithmetic.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "multclass/rational.hpp"

namespace multclass {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical factorization: ascending distinct primes with exponents >= 1.
/// The empty list represents 1.
struct Factorization {
  std::vector<PrimePower> pairs;

  [[nodiscard]] u64 value() const {
    u64 v = 1;
    for (const auto& pp : pairs) v = checked::mul(v, checked::pow(pp.prime, pp.exponent));
    return v;
  }
  [[nodiscard]] unsigned exponent_of(u64 p) const {
    for (const auto& pp : pairs) {
      if (pp.prime == p) return pp.exponent;
      if (pp.prime > p) break;
    }
    return 0;
  }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Smallest-prime-factor sieve on [0, bound]. Immutable after construction.
class Sieve {
 public:
  static constexpr u64 kDefaultBound = 1'000'000;

  explicit Sieve(u64 bound = kDefaultBound) : bound_(std::max<u64>(bound, 2)), spf_(bound_ + 1, 0) {
    for (u64 i = 2; i <= bound_; ++i) {
      if (spf_[i] != 0) continue;
      primes_.push_back(i);
      spf_[i] = static_cast<std::uint32_t>(i);
      if (i * i > bound_) continue;
      for (u64 j = i * i; j <= bound_; j += i) {
        if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
      }
    }
  }

  /// Process-wide sieve; bound taken from MULTCLASS_SIEVE_BOUND when set.
  static const Sieve& instance() {
    static const Sieve sieve(bound_from_env());
    return sieve;
  }

  static u64 bound_from_env() {
    const char* env = std::getenv("MULTCLASS_SIEVE_BOUND");
    if (env == nullptr || *env == '\0') return kDefaultBound;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v < 2 || v > 100'000'000ULL) {
      throw std::invalid_argument(std::string("multclass: invalid MULTCLASS_SIEVE_BOUND '") + env + "'");
    }
    return v;
  }

  [[nodiscard]] u64 bound() const { return bound_; }
  [[nodiscard]] const std::vector<u64>& primes() const { return primes_; }

  [[nodiscard]] bool is_prime(u64 n) const {
    if (n < 2) return false;
    if (n <= bound_) return spf_[n] == n;
    for (u64 p : primes_) {
      if (p > n / p) return true;
      if (n % p == 0) return false;
    }
    throw std::domain_error("multclass: " + std::to_string(n) + " exceeds the primality range of the sieve");
  }

  [[nodiscard]] Factorization factorize(u64 n) const {
    if (n == 0) throw std::domain_error("multclass: cannot factorize 0");
    Factorization f;
    if (n <= bound_) {
      while (n > 1) {
        const u64 p = spf_[n];
        unsigned e = 0;
        while (n % p == 0) {
          n /= p;
          ++e;
        }
        f.pairs.push_back({p, e});
      }
      return f;
    }
    for (u64 p : primes_) {
      if (p > n / p) break;
      if (n % p != 0) continue;
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.pairs.push_back({p, e});
      if (n <= bound_) {
        auto rest = factorize(n);
        f.pairs.insert(f.pairs.end(), rest.pairs.begin(), rest.pairs.end());
        return f;
      }
    }
    if (n > 1) {
      // Remaining cofactor is prime only if it has no factor <= sqrt, which the
      // sieve can certify when cofactor <= bound^2.
      if (n / bound_ > bound_) {
        throw std::domain_error("multclass: cofactor " + std::to_string(n) +
                                " exceeds the square of the sieve bound");
      }
      f.pairs.push_back({n, 1});
    }
    return f;
  }

 private:
  u64 bound_;
  std::vector<std::uint32_t> spf_;
  std::vector<u64> primes_;
};

inline Factorization factorize(u64 n) { return Sieve::instance().factorize(n); }

inline Factorization factorize_checked(i64 n) {
  if (n <= 0) throw std::domain_error("multclass: factorize requires a positive integer, got " + std::to_string(n));
  return factorize(static_cast<u64>(n));
}

inline bool is_prime(u64 n) { return Sieve::instance().is_prime(n); }

/// Exponent of prime p in n.
inline unsigned nu(u64 p, u64 n) {
  if (!is_prime(p)) throw std::domain_error("multclass: nu requires a prime, got " + std::to_string(p));
  if (n == 0) throw std::domain_error("multclass: nu requires n >= 1");
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

inline u64 gcd(u64 m, u64 n) { return std::gcd(m, n); }

inline u64 lcm(u64 m, u64 n) {
  if (m == 0 || n == 0) return 0;
  return checked::mul(m / std::gcd(m, n), n);
}

inline u64 radical(u64 n) {
  u64 r = 1;
  for (const auto& pp : factorize(n).pairs) r *= pp.prime;
  return r;
}

inline unsigned omega(u64 n) { return static_cast<unsigned>(factorize(n).pairs.size()); }

/// All divisors, ascending.
inline std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (const auto& pp : f.pairs) {
    const std::size_t base = out.size();
    u64 pk = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}
inline std::vector<u64> divisors(u64 n) { return divisors(factorize(n)); }

/// Divisors d of n with gcd(d, n/d) = 1, ascending. There are 2^omega(n).
inline std::vector<u64> unitary_divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (const auto& pp : f.pairs) {
    const u64 pk = checked::pow(pp.prime, pp.exponent);
    const std::size_t base = out.size();
    for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
  }
  std::sort(out.begin(), out.end());
  return out;
}
inline std::vector<u64> unitary_divisors(u64 n) { return unitary_divisors(factorize(n)); }

inline bool is_unitary_divisor(u64 d, u64 n) {
  return d != 0 && n % d == 0 && std::gcd(d, n / d) == 1;
}

inline bool is_squarefree(u64 n) {
  for (const auto& pp : factorize(n).pairs) {
    if (pp.exponent > 1) return false;
  }
  return true;
}

/// Every prime exponent >= 2. Vacuously true for n = 1; callers that need
/// "squareful or n = 1" should test n == 1 explicitly.
inline bool is_squareful(u64 n) {
  for (const auto& pp : factorize(n).pairs) {
    if (pp.exponent < 2) return false;
  }
  return true;
}

/// a is regular mod r iff a^2 x = a (mod r) is solvable, which happens
/// exactly when gcd(a, r) is a unitary divisor of r.
inline bool is_regular_mod(u64 a, u64 r) {
  if (r == 0) throw std::domain_error("multclass: is_regular_mod requires r >= 1");
  a %= r;
  if (a == 0) return true;
  return is_unitary_divisor(std::gcd(a, r), r);
}

inline i64 mobius(u64 n) {
  i64 s = 1;
  for (const auto& pp : factorize(n).pairs) {
    if (pp.exponent > 1) return 0;
    s = -s;
  }
  return s;
}

inline u64 euler_phi(u64 n) {
  u64 r = 1;
  for (const auto& pp : factorize(n).pairs) {
    r *= checked::pow(pp.prime, pp.exponent - 1) * (pp.prime - 1);
  }
  return r;
}

}  // namespace multclass
