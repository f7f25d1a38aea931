#include <gtest/gtest.h>

#include <numeric>

#include "multclass/classes.hpp"
#include "multclass/ramanujan.hpp"
#include "multclass/suites.hpp"

using namespace multclass;

namespace {

const ArithFn mu = classical(Classical::mobius);

ArithFn c_fn(u64 r) { return ramanujan::c_fn(r); }

ArithFn indicator_2_3() {
  return {"indicator{2,3}", [](u64 n) { return (n == 2 || n == 3) ? Rational(1) : Rational(0); }};
}

ArithFn n_plus_one() {
  return {"n+1", [](u64 n) { return Rational(static_cast<i64>(n) + 1); }};
}

// Straight from the definition: a = least n with f(n) != 0, then every
// pair of coprime m, n with amn in the window, plus the support condition.
bool semi_by_definition(const ArithFn& f, u64 window) {
  u64 a = 0;
  for (u64 n = 1; n <= window && a == 0; ++n) {
    if (!f(n).is_zero()) a = n;
  }
  if (a == 0) return true;
  for (u64 n = 1; n <= window; ++n) {
    if (n % a != 0 && !f(n).is_zero()) return false;
  }
  for (u64 m = 1; a * m <= window; ++m) {
    for (u64 n = 1; a * m * n <= window; ++n) {
      if (std::gcd(m, n) != 1) continue;
      if (f(a) * f(a * m * n) != f(a * m) * f(a * n)) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Multiplicative, Examples) {
  EXPECT_EQ(check_multiplicative(mu, 200).verdict, Verdict::consistent);

  const ClassReport two_mu = check_multiplicative(scale(mu, Rational(2)), 10);
  ASSERT_EQ(two_mu.verdict, Verdict::refuted);
  EXPECT_EQ(two_mu.witness->m, 1u);
  EXPECT_EQ(two_mu.witness->n, 1u);
  EXPECT_EQ(two_mu.witness->lhs, Rational(2));
  EXPECT_EQ(two_mu.witness->rhs, Rational(4));

  const ClassReport c2 = check_multiplicative(c_fn(2), 10);
  ASSERT_EQ(c2.verdict, Verdict::refuted);
  EXPECT_TRUE(witness_reproduces(c_fn(2), c2));
}

TEST(Quasimultiplicative, Examples) {
  const ClassReport two_mu = check_quasimultiplicative(scale(mu, Rational(2)), 100);
  ASSERT_EQ(two_mu.verdict, Verdict::consistent);
  EXPECT_EQ(two_mu.params->c, Rational(2));

  const ClassReport r2 = check_quasimultiplicative(sum_of_squares(2), 100);
  ASSERT_EQ(r2.verdict, Verdict::consistent);
  EXPECT_EQ(r2.params->c, Rational(4));

  const ClassReport c4 = check_quasimultiplicative(c_fn(4), 10);
  ASSERT_EQ(c4.verdict, Verdict::refuted);
  EXPECT_EQ(c4.witness->relation, Relation::unit_vanishes);
  EXPECT_TRUE(witness_reproduces(c_fn(4), c4));
}

TEST(Semimultiplicative, Examples) {
  const ClassReport c4 = check_semimultiplicative(c_fn(4), 64);
  ASSERT_EQ(c4.verdict, Verdict::consistent);
  EXPECT_EQ(c4.params->a, 2u);
  EXPECT_EQ(c4.params->c, Rational(-2));

  const ClassReport m = check_semimultiplicative(mu, 100);
  ASSERT_EQ(m.verdict, Verdict::consistent);
  EXPECT_EQ(m.params->a, 1u);
  EXPECT_EQ(m.params->c, Rational(1));

  const ClassReport ind = check_semimultiplicative(indicator_2_3(), 12);
  ASSERT_EQ(ind.verdict, Verdict::refuted);
  EXPECT_EQ(ind.witness->relation, Relation::support);
  EXPECT_EQ(ind.witness->m, 2u);
  EXPECT_EQ(ind.witness->n, 3u);
  EXPECT_TRUE(witness_reproduces(indicator_2_3(), ind));
}

TEST(Rearick, Examples) {
  const ArithFn c4 = c_fn(4);
  EXPECT_EQ(c4(2) * c4(6), c4(2) * c4(6));
  EXPECT_EQ(c4(2) * c4(6), Rational(4));
  EXPECT_EQ(check_rearick(c4, 64).verdict, Verdict::consistent);
  EXPECT_EQ(check_rearick(mu, 50).verdict, Verdict::consistent);

  // Least failing pair in (m, n) order, found by brute force: f(2)f(3) = 12, f(1)f(6) = 14.
  const ClassReport np1 = check_rearick(n_plus_one(), 10);
  ASSERT_EQ(np1.verdict, Verdict::refuted);
  EXPECT_EQ(np1.witness->m, 2u);
  EXPECT_EQ(np1.witness->n, 3u);
  EXPECT_EQ(np1.witness->lhs, Rational(12));
  EXPECT_EQ(np1.witness->rhs, Rational(14));
  EXPECT_TRUE(witness_reproduces(n_plus_one(), np1));
}

TEST(Selberg, ExtractExamples) {
  const SelbergFactorization c4 = extract_selberg(c_fn(4), 64);
  EXPECT_EQ(c4.constant, Rational(-2));
  EXPECT_EQ(c4.factor(2, 0), Rational(0));
  EXPECT_EQ(c4.factor(2, 1), Rational(1));
  EXPECT_EQ(c4.factor(2, 2), Rational(-1));
  for (u64 p : {3, 5, 7, 11}) {
    for (unsigned e = 0; e <= 2; ++e) EXPECT_EQ(c4.factor(p, e), Rational(1)) << p << "^" << e;
  }

  const SelbergFactorization m = extract_selberg(mu, 64);
  EXPECT_EQ(m.constant, Rational(1));
  const SelbergFactorization m3 = extract_selberg(scale(mu, Rational(3)), 64);
  EXPECT_EQ(m3.constant, Rational(3));
  for (u64 p : {2, 3, 5, 7}) {
    for (const auto* s : {&m, &m3}) {
      EXPECT_EQ(s->factor(p, 0), Rational(1));
      EXPECT_EQ(s->factor(p, 1), Rational(-1));
      EXPECT_EQ(s->factor(p, 2), Rational(0));
    }
  }
  EXPECT_THROW(extract_selberg(indicator_2_3(), 12), std::domain_error);
}

TEST(Selberg, FactorSystemVerdicts) {
  const ClassReport c4 = check_selberg(c_fn(4), 64);
  ASSERT_EQ(c4.verdict, Verdict::consistent);
  ASSERT_TRUE(c4.params && c4.params->selberg);
  for (u64 n = 1; n <= 64; ++n) EXPECT_EQ(c4.params->selberg->reconstruct(n), c_fn(4)(n)) << n;

  const ClassReport np1 = check_selberg(n_plus_one(), 16);
  ASSERT_EQ(np1.verdict, Verdict::refuted);
  EXPECT_TRUE(witness_reproduces(n_plus_one(), np1));
}

TEST(Classes, ZeroFunction) {
  for (auto v : {check_multiplicative(zero_fn(), 20).verdict, check_quasimultiplicative(zero_fn(), 20).verdict,
                 check_semimultiplicative(zero_fn(), 20).verdict, check_selberg(zero_fn(), 20).verdict,
                 check_rearick(zero_fn(), 20).verdict}) {
    EXPECT_EQ(v, Verdict::identically_zero);
  }
  EXPECT_THROW(check_multiplicative(mu, 1), std::invalid_argument);
}

// Invariants over the whole corpus, against definition-level brute force.
TEST(Classes, CorpusInvariants) {
  const u64 window = 48;
  auto corpus = suites::standard_corpus(24);
  for (const auto& f : suites::control_corpus()) corpus.push_back(f);
  for (const auto& f : corpus) {
    SCOPED_TRACE(f.name());
    const ClassReport mr = check_multiplicative(f, window);
    const ClassReport qr = check_quasimultiplicative(f, window);
    const ClassReport sr = check_semimultiplicative(f, window);
    const ClassReport rr = check_rearick(f, window);
    const ClassReport sel = check_selberg(f, window);
    for (const auto* r : {&mr, &qr, &sr, &rr, &sel}) {
      if (r->verdict == Verdict::refuted) {
        EXPECT_TRUE(witness_reproduces(f, *r)) << to_string(r->cls);
      }
    }
    if (qr.verdict == Verdict::consistent) {
      EXPECT_EQ(qr.params->c, f(1));
      EXPECT_FALSE(qr.params->c.is_zero());
    }
    if (sr.verdict == Verdict::consistent) {
      EXPECT_FALSE(f(sr.params->a).is_zero());
      for (u64 n = 1; n < sr.params->a; ++n) EXPECT_TRUE(f(n).is_zero());
      const SelbergFactorization s = extract_selberg(f, window);
      for (u64 n = 1; n <= window; ++n) EXPECT_EQ(s.reconstruct(n), f(n)) << n;
      for (u64 p : s.exception_primes()) EXPECT_EQ(s.a % p, 0u) << p;
      EXPECT_EQ(sel.verdict, Verdict::consistent);
    }
    EXPECT_EQ(sr.verdict != Verdict::refuted, semi_by_definition(f, window));
    EXPECT_EQ(rr.verdict, sr.verdict);
  }
}
