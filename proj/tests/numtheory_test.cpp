#include <gtest/gtest.h>

#include <numeric>

#include "multclass/numtheory.hpp"
#include "multclass/oracles.hpp"

using namespace multclass;

namespace {

std::vector<std::pair<u64, unsigned>> pairs(const Factorization& f) {
  std::vector<std::pair<u64, unsigned>> out;
  for (const auto& pp : f.pairs) out.emplace_back(pp.prime, pp.exponent);
  return out;
}

bool prime_by_trial(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST(Factorize, Examples) {
  EXPECT_TRUE(factorize(1).pairs.empty());
  EXPECT_EQ(pairs(factorize(12)), (std::vector<std::pair<u64, unsigned>>{{2, 2}, {3, 1}}));
  EXPECT_EQ(pairs(factorize(97)), (std::vector<std::pair<u64, unsigned>>{{97, 1}}));
}

TEST(Factorize, Invariants) {
  for (u64 n = 1; n <= 5000; ++n) {
    const Factorization f = factorize(n);
    EXPECT_EQ(f.value(), n);
    u64 prev = 0;
    for (const auto& pp : f.pairs) {
      EXPECT_GT(pp.prime, prev);
      EXPECT_TRUE(prime_by_trial(pp.prime));
      EXPECT_GE(pp.exponent, 1u);
      prev = pp.prime;
    }
  }
}

TEST(Factorize, LargeAndInvalid) {
  const u64 big = 999'983ULL * 1'000'003ULL;  // cofactor beyond the sieve
  EXPECT_EQ(factorize(big).value(), big);
  EXPECT_THROW(factorize(0), std::domain_error);
  EXPECT_THROW(factorize_checked(-4), std::domain_error);
}

TEST(Nu, Examples) {
  EXPECT_EQ(nu(2, 12), 2u);
  EXPECT_EQ(nu(3, 10), 0u);
  EXPECT_EQ(nu(5, 125), 3u);
  EXPECT_THROW(nu(4, 16), std::domain_error);
}

TEST(Radical, Examples) {
  EXPECT_EQ(radical(1), 1u);
  EXPECT_EQ(radical(12), 6u);
  EXPECT_EQ(radical(8), 2u);
}

TEST(Basic, OmegaGcdLcmUnitary) {
  EXPECT_EQ(unitary_divisors(12), (std::vector<u64>{1, 3, 4, 12}));
  EXPECT_EQ(omega(12), 2u);
  EXPECT_EQ(gcd(2, 6), 2u);
  EXPECT_EQ(lcm(2, 6), 6u);
  EXPECT_THROW(lcm(1ULL << 40, (1ULL << 40) - 1), std::overflow_error);
}

TEST(Divisors, MatchTrialDivision) {
  for (u64 n = 1; n <= 600; ++n) {
    std::vector<u64> all, unitary;
    for (u64 d = 1; d <= n; ++d) {
      if (n % d) continue;
      all.push_back(d);
      if (std::gcd(d, n / d) == 1) unitary.push_back(d);
    }
    EXPECT_EQ(divisors(n), all) << n;
    EXPECT_EQ(unitary_divisors(n), unitary) << n;
  }
}

TEST(Regular, Examples) {
  EXPECT_TRUE(is_regular_mod(5, 12));
  EXPECT_TRUE(is_regular_mod(0, 5));
  EXPECT_FALSE(is_regular_mod(2, 12));
  EXPECT_THROW(is_regular_mod(1, 0), std::domain_error);
}

TEST(Regular, MatchesBruteForce) {
  for (u64 r = 1; r <= 150; ++r) {
    for (u64 a = 0; a < 2 * r; ++a) {
      EXPECT_EQ(is_regular_mod(a, r), oracle::is_regular_brute(a, r)) << a << " mod " << r;
    }
  }
}

TEST(Regular, UnitsAreRegular) {
  for (u64 r = 1; r <= 200; ++r) {
    for (u64 a = 1; a < r; ++a) {
      if (std::gcd(a, r) == 1) {
        EXPECT_TRUE(is_regular_mod(a, r));
      }
    }
  }
}

TEST(Squareful, Examples) {
  EXPECT_TRUE(is_squareful(36));
  EXPECT_FALSE(is_squareful(12));
  EXPECT_TRUE(is_squareful(8));
}

TEST(Classical, MobiusPhiByDefinition) {
  for (u64 n = 1; n <= 1000; ++n) {
    u64 coprime = 0;
    for (u64 a = 1; a <= n; ++a) coprime += std::gcd(a, n) == 1;
    EXPECT_EQ(euler_phi(n), coprime) << n;
    // sum_{d | n} mu(d) = [n = 1]
    i64 s = 0;
    for (u64 d : divisors(n)) s += mobius(d);
    EXPECT_EQ(s, n == 1 ? 1 : 0) << n;
  }
}

TEST(Sieve, PrimalityAgreesWithTrialDivision) {
  for (u64 n = 0; n <= 20000; ++n) EXPECT_EQ(is_prime(n), prime_by_trial(n)) << n;
}
