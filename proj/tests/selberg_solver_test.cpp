#include <gtest/gtest.h>

#include <random>

#include "multclass/multclass.hpp"

using namespace multclass;

namespace {

Rational sum2(const Point& p) { return Rational(static_cast<i64>(p[0] + p[1])); }

// Builds f(n) = C prod_p F_p(signature) from explicit tables.
struct Planted {
  Rational constant;
  std::map<u64, std::map<Signature, Rational>> tables;
  Rational operator()(const Point& n) const {
    Rational v = constant;
    for (const auto& [p, t] : tables) {
      auto it = t.find(signature_of(p, n));
      if (it != t.end()) v *= it->second;
    }
    return v;
  }
};

}  // namespace

TEST(Hypercube, LexOrder) {
  const auto pts = detail::hypercube(2, 3);
  ASSERT_EQ(pts.size(), 9u);
  EXPECT_EQ(pts.front(), (Point{1, 1}));
  EXPECT_EQ(pts[1], (Point{1, 2}));
  EXPECT_EQ(pts.back(), (Point{3, 3}));
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
  EXPECT_THROW(detail::hypercube(0, 3), std::invalid_argument);
}

TEST(Signature, Exponents) {
  EXPECT_EQ(signature_of(2, {12, 5, 8}), (Signature{2, 0, 3}));
  EXPECT_EQ(signature_str({0, 1}), "(0,1)");
}

TEST(Solver, SumOfCoordinatesIsRefuted) {
  // Gauge f(1,1) = 2; (1,2) and (1,3) pin F_2(0,1) = 3/2 and F_3(0,1) = 2,
  // so (1,6) is predicted as 2 * 3/2 * 2 = 6 but f(1,6) = 7.
  const auto r = solve_selberg(sum2, 2, 8);
  ASSERT_EQ(r.verdict, Verdict::refuted);
  EXPECT_EQ(r.obstruction, "ratio");
  EXPECT_EQ(*r.witness, (Point{1, 6}));
  EXPECT_EQ(r.predicted, Rational(6));
  EXPECT_EQ(r.actual, Rational(7));
  const std::vector<WindowEquation> eqs{{{1, 1}, 2}, {{1, 2}, 3}, {{1, 3}, 4}, {{1, 6}, 7}};
  EXPECT_EQ(r.equations, eqs);
}

TEST(Solver, RemarkCounterexample) {
  const MultiArithFn f = remark_counterexample();
  const auto r = solve_selberg(f, 2, 8);
  ASSERT_EQ(r.verdict, Verdict::consistent);
  const FactorSystem& fs = *r.system;
  EXPECT_EQ(fs.constant, Rational(1));
  EXPECT_EQ(fs.factor(2, {0, 0}), Rational(0));
  for (const auto& [p, t] : fs.tables) {
    for (const auto& [sig, v] : t) {
      if (p == 2 && sig == Signature{0, 0}) continue;
      EXPECT_EQ(v, Rational(1)) << p << signature_str(sig);
    }
  }
  for (const auto& pt : detail::hypercube(2, 8)) EXPECT_EQ(fs.evaluate(pt), f(pt));
}

TEST(Solver, ZeroPatternObstruction) {
  // f vanishes only at (2,3): no prime can carry that zero alone.
  auto f = [](const Point& p) { return (p[0] == 2 && p[1] == 3) ? Rational(0) : Rational(1); };
  const auto r = solve_selberg(f, 2, 4);
  ASSERT_EQ(r.verdict, Verdict::refuted);
  EXPECT_EQ(r.obstruction, "zero-pattern");
  EXPECT_EQ(*r.witness, (Point{2, 3}));
}

TEST(Solver, IdenticallyZero) {
  const auto r = solve_selberg([](const Point&) { return Rational(0); }, 2, 4);
  EXPECT_EQ(r.verdict, Verdict::identically_zero);
}

TEST(Solver, RecoversPlantedSystems) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> val(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned arity = 1 + trial % 3;
    const u64 window = arity == 3 ? 6 : 12;
    Planted g;
    g.constant = Rational(1 + trial % 5);
    for (u64 p : {2, 3, 5, 7, 11}) {
      if (p > window) break;
      for (const auto& pt : detail::hypercube(arity, window)) {
        const Signature s = signature_of(p, pt);
        if (g.tables[p].count(s)) continue;
        int v = val(rng);
        if (v == 0 && trial % 2 == 0) v = 1;  // half the trials keep full support
        g.tables[p][s] = Rational(v);
      }
    }
    const auto r = solve_selberg(std::cref(g), arity, window);
    if (r.verdict == Verdict::identically_zero) continue;
    ASSERT_NE(r.verdict, Verdict::refuted) << "trial " << trial;
    if (r.verdict == Verdict::inconclusive) continue;
    for (const auto& pt : detail::hypercube(arity, window)) {
      EXPECT_EQ(r.system->evaluate(pt), g(pt)) << "trial " << trial << " at " << point_str(pt);
    }
  }
}

// Rescaling f or moving weight between the constant and a prime table must
// not change the verdict or the normalized tables.
TEST(Solver, GaugeInvariance) {
  const MultiArithFn base = tensor({ramanujan::c_fn(12), ramanujan::c_bar_fn(4)});
  const auto r0 = solve_selberg(base, 2, 16);
  ASSERT_EQ(r0.verdict, Verdict::consistent);
  for (const Rational k : {Rational(3), Rational(-2), Rational(Int128{5}, Int128{7})}) {
    const auto r = solve_selberg([&](const Point& p) { return k * base(p); }, 2, 16);
    ASSERT_EQ(r.verdict, Verdict::consistent);
    EXPECT_EQ(r.system->constant, k * r0.system->constant);
    EXPECT_EQ(r.system->tables, r0.system->tables);
  }
  const auto rs = solve_selberg(sum2, 2, 8);
  const auto rs3 = solve_selberg([](const Point& p) { return Rational(3) * sum2(p); }, 2, 8);
  EXPECT_EQ(rs3.verdict, rs.verdict);
  EXPECT_EQ(*rs3.witness, *rs.witness);
  EXPECT_EQ(rs3.actual, Rational(3) * rs.actual);
  EXPECT_EQ(rs3.predicted, Rational(3) * rs.predicted);
}
