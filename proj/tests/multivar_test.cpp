#include <gtest/gtest.h>

#include <numeric>

#include "multclass/multclass.hpp"

using namespace multclass;

namespace {

const ArithFn mu = classical(Classical::mobius);
const MultiArithFn mu2 = tensor({mu, mu});
const MultiArithFn two_mu2 = scale_u(mu2, Rational(2));
const MultiArithFn c4c4 = tensor({ramanujan::c_fn(4), ramanujan::c_fn(4)});
const MultiArithFn sum2{"sum2", 2, [](const Point& p) { return Rational(static_cast<i64>(p[0] + p[1])); }};
const MultiArithFn first_coord{"n", 2, [](const Point& p) { return Rational(static_cast<i64>(p[0])); }};

bool coprime_products(const Point& m, const Point& n) {
  u64 a = 1, b = 1;
  for (u64 v : m) a *= v;
  for (u64 v : n) b *= v;
  return std::gcd(a, b) == 1;
}

}  // namespace

TEST(RemarkCounterexample, Values) {
  const MultiArithFn f = remark_counterexample();
  EXPECT_EQ(f({1, 1}), Rational(0));
  EXPECT_EQ(f({1, 2}), Rational(1));
  EXPECT_EQ(f({2, 1}), Rational(1));
  EXPECT_EQ(f({3, 5}), Rational(0));
  EXPECT_THROW(f({1}), std::invalid_argument);
  EXPECT_THROW(f({0, 1}), std::domain_error);
}

TEST(CoprimeSplits, AreExactlyTheCoprimeFactorizations) {
  for (const Point& k : {Point{12, 5}, Point{1, 1}, Point{6, 10}, Point{8, 9, 7}}) {
    const auto splits = detail::coprime_splits(k);
    std::size_t brute = 0;
    for (const auto& m : detail::hypercube(static_cast<unsigned>(k.size()), *std::max_element(k.begin(), k.end()))) {
      bool divides = true;
      Point n(k.size());
      for (std::size_t i = 0; i < k.size(); ++i) {
        divides = divides && k[i] % m[i] == 0;
        if (divides) n[i] = k[i] / m[i];
      }
      if (divides && coprime_products(m, n)) ++brute;
    }
    EXPECT_EQ(splits.size(), brute) << point_str(k);
    for (const auto& [m, n] : splits) {
      EXPECT_TRUE(coprime_products(m, n));
      EXPECT_EQ(detail::hadamard(m, n), k);
    }
  }
}

TEST(DirichletU, MatchesDivisorSum) {
  const MultiArithFn one2 = tensor({classical(Classical::one), classical(Classical::one)});
  const MultiArithFn d = dirichlet_u(one2, one2);
  for (const auto& p : detail::hypercube(2, 12)) {
    i64 count = 0;
    for (u64 a = 1; a <= p[0]; ++a) {
      for (u64 b = 1; b <= p[1]; ++b) count += (p[0] % a == 0 && p[1] % b == 0);
    }
    EXPECT_EQ(d(p), Rational(count));
  }
}

TEST(MultiplicativeU, Examples) {
  EXPECT_EQ(check_multiplicative_u(mu2, 30).verdict, Verdict::consistent);
  EXPECT_EQ(check_multiplicative_u(ramanujan::c_two_variable(), 30).verdict, Verdict::consistent);

  // First failure in lexicographic order of the product point: (1,1)(.)(1,2).
  const MultiArithFn f = remark_counterexample();
  const MultiClassReport r = check_multiplicative_u(f, 8);
  ASSERT_EQ(r.verdict, Verdict::refuted);
  EXPECT_EQ(r.witness->m, (Point{1, 1}));
  EXPECT_EQ(r.witness->n, (Point{1, 2}));
  EXPECT_EQ(r.witness->lhs, Rational(1));
  EXPECT_EQ(r.witness->rhs, Rational(0));
  EXPECT_TRUE(witness_reproduces(f, r));
}

TEST(QuasimultiplicativeU, Examples) {
  const MultiClassReport q = check_quasimultiplicative_u(two_mu2, 20);
  ASSERT_EQ(q.verdict, Verdict::consistent);
  EXPECT_EQ(q.params->c, Rational(2));

  const MultiClassReport c = check_quasimultiplicative_u(ramanujan::c_two_variable(), 30);
  ASSERT_EQ(c.verdict, Verdict::consistent);
  EXPECT_EQ(c.params->c, Rational(1));

  const MultiClassReport rc = check_quasimultiplicative_u(remark_counterexample(), 8);
  ASSERT_EQ(rc.verdict, Verdict::refuted);
  EXPECT_EQ(rc.witness->relation, Relation::unit_vanishes);
  EXPECT_TRUE(witness_reproduces(remark_counterexample(), rc));
}

TEST(SemimultiplicativeU, Examples) {
  const MultiClassReport m = check_semimultiplicative_u(mu2, 20);
  ASSERT_EQ(m.verdict, Verdict::consistent);
  EXPECT_EQ(m.params->a, (Point{1, 1}));
  EXPECT_EQ(m.params->c, Rational(1));

  const MultiClassReport c = check_semimultiplicative_u(c4c4, 32);
  ASSERT_EQ(c.verdict, Verdict::consistent);
  EXPECT_EQ(c.params->a, (Point{2, 2}));
  EXPECT_EQ(c.params->c, Rational(4));
}

TEST(SemimultiplicativeU, RemarkObstructionChain) {
  const MultiClassReport r = check_semimultiplicative_u(remark_counterexample(), 8);
  ASSERT_EQ(r.verdict, Verdict::refuted);
  ASSERT_EQ(r.shift_chain.size(), 3u);
  EXPECT_EQ(r.shift_chain[0].point, (Point{1, 2}));  // forces a_1 = 1
  EXPECT_EQ(r.shift_chain[0].bound[0], 1u);
  EXPECT_EQ(r.shift_chain[1].point, (Point{2, 1}));  // forces a_2 = 1
  EXPECT_EQ(r.shift_chain[1].bound, (Point{1, 1}));
  EXPECT_EQ(r.shift_chain[2].point, (Point{1, 1}));
  EXPECT_EQ(r.shift_chain[2].value, Rational(0));
  EXPECT_EQ(r.witness->relation, Relation::shift_vanishes);
  EXPECT_EQ(r.witness->m, (Point{1, 1}));
  EXPECT_TRUE(witness_reproduces(remark_counterexample(), r));
}

TEST(ExtractSelbergU, Examples) {
  const FactorSystem m = extract_selberg_u(mu2, 20);
  EXPECT_EQ(m.constant, Rational(1));
  for (u64 p : {2, 3}) {
    for (unsigned e1 = 0; e1 <= 2; ++e1) {
      for (unsigned e2 = 0; e2 <= 2; ++e2) {
        const Rational want = mu(checked::pow(p, e1)) * mu(checked::pow(p, e2));
        EXPECT_EQ(m.factor(p, {e1, e2}), want);
      }
    }
  }
  const FactorSystem two = extract_selberg_u(two_mu2, 20);
  EXPECT_EQ(two.constant, Rational(2));
  EXPECT_EQ(two.tables, m.tables);

  const FactorSystem c = extract_selberg_u(c4c4, 32);
  EXPECT_EQ(c.constant, Rational(4));
  EXPECT_EQ(c.factor(2, {1, 1}), Rational(1));
  EXPECT_EQ(c.factor(2, {2, 2}), Rational(1));
  for (unsigned e = 0; e <= 3; ++e) EXPECT_EQ(c.factor(2, {0, e}), Rational(0));
  for (const auto& pt : detail::hypercube(2, 32)) EXPECT_EQ(c.evaluate(pt), c4c4(pt)) << point_str(pt);
}

TEST(SelbergU, Examples) {
  const MultiClassReport rc = check_selberg_u(remark_counterexample(), 8);
  ASSERT_EQ(rc.verdict, Verdict::consistent);
  EXPECT_EQ(rc.params->selberg->factor(2, {0, 0}), Rational(0));

  const MultiClassReport s = check_selberg_u(sum2, 8);
  ASSERT_EQ(s.verdict, Verdict::refuted);
  EXPECT_EQ(s.witness->n, (Point{1, 6}));
  EXPECT_TRUE(witness_reproduces(sum2, s));

  for (const MultiArithFn& f : {mu2, two_mu2, c4c4, ramanujan::c_two_variable(), ramanujan::c_bar_two_variable()}) {
    if (check_semimultiplicative_u(f, 12).verdict == Verdict::consistent) {
      EXPECT_EQ(check_selberg_u(f, 12).verdict, Verdict::consistent) << f.name();
    }
  }
}

TEST(TwoVariable, RamanujanSums) {
  for (const MultiArithFn& f : {ramanujan::c_two_variable(), ramanujan::c_bar_two_variable()}) {
    const TwoVariableReport r = check_two_variable_theorem(f, 30);
    EXPECT_TRUE(r.hypothesis_holds()) << f.name();
    EXPECT_TRUE(r.passed()) << f.name();
    EXPECT_GT(r.chain_instances, 0u);
  }
}

TEST(TwoVariable, NotEven) {
  // f(n, r) = n: first failure with r ascending, then n, is r = 1, n = 2 (2 != (2,1) = 1).
  const TwoVariableReport r = check_two_variable_theorem(first_coord, 30);
  EXPECT_FALSE(r.even_in_n);
  ASSERT_TRUE(r.even_witness);
  EXPECT_EQ(r.even_witness->first, 1u);
  EXPECT_EQ(r.even_witness->second, 2u);
  EXPECT_FALSE(r.passed());
  EXPECT_THROW(check_two_variable_theorem(mu2.renamed("x"), 1), std::invalid_argument);
}
