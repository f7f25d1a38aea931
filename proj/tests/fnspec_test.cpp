#include <gtest/gtest.h>

#include "multclass/fnspec.hpp"
#include "multclass/suites.hpp"

using namespace multclass;
using namespace multclass::fnspec;

TEST(FnSpec, Builtins) {
  EXPECT_EQ(build("mobius")(6), Rational(1));
  EXPECT_EQ(build("mu")(4), Rational(0));
  EXPECT_EQ(build("c", {4, {}})(2), Rational(-2));
  EXPECT_EQ(build("c[4]")(2), Rational(-2));
  EXPECT_EQ(build("mu_bar", {12, {}})(4), Rational(1));
  EXPECT_EQ(build("eta", {{}, 6})(3), Rational(3));
  EXPECT_EQ(build("r2")(25), Rational(12));
}

TEST(FnSpec, Combinators) {
  EXPECT_EQ(build("scale:2(mobius)")(1), Rational(2));
  EXPECT_EQ(build("scale:-1/2(one)")(9), Rational(Int128{-1}, Int128{2}));
  EXPECT_EQ(build("dirichlet(one, one)")(6), Rational(4));
  EXPECT_EQ(build("unitary(one,one)")(12), Rational(4));
  EXPECT_EQ(build("noverk:2(mobius)")(3), Rational(0));
  EXPECT_EQ(build("dilate:2(mobius)")(1), Rational(-1));
  EXPECT_EQ(build("lcmk:4(one)")(6), Rational(1));
  EXPECT_EQ(build("gcdk:6(c_bar[4])")(9), Rational(1));
  EXPECT_EQ(build("product(c[4],phi)")(4), Rational(4));
}

TEST(FnSpec, Errors) {
  for (const char* bad : {"nosuch", "c", "c[0]", "dirichlet(one)", "scale:0(one)", "dilate:x(one)", "one(",
                          "one)", "", "ramanujan2", "tensor(ramanujan2)", "product(one,sum2)"}) {
    EXPECT_THROW(
        {
          const Node n = parse(bad);
          if (arity_of(n) == 1) {
            build(n);
          } else {
            build_multi(n);
            build(n);
          }
        },
        FnSpecError)
        << bad;
  }
}

TEST(FnSpec, Arity) {
  EXPECT_EQ(arity_of(parse("mobius")), 1u);
  EXPECT_EQ(arity_of(parse("remark-counterexample")), 2u);
  EXPECT_EQ(arity_of(parse("tensor(mobius,phi,one)")), 3u);
  EXPECT_EQ(arity_of(parse("scale:2(ramanujan2)")), 2u);
  const MultiArithFn t = build_multi("tensor(mobius,phi)");
  EXPECT_EQ(t({6, 5}), Rational(4));
  EXPECT_EQ(build_multi("sum2")({2, 5}), Rational(7));
  EXPECT_EQ(build_multi("ramanujan2")({2, 4}), Rational(-2));
}

// Every corpus name is itself a valid fn-spec that rebuilds the same function.
TEST(FnSpec, NamesRoundTrip) {
  for (const ArithFn& f : suites::standard_corpus(12)) {
    SCOPED_TRACE(f.name());
    const ArithFn g = build(f.name());
    EXPECT_EQ(g.name(), f.name());
    for (u64 n = 1; n <= 40; ++n) EXPECT_EQ(g(n), f(n)) << n;
  }
}

TEST(FnSpec, Provenance) {
  EXPECT_NE(provenance(parse("c[4]")).find("mu(r/d)"), std::string::npos);
  EXPECT_EQ(provenance(parse("lcmk:4(one)")), "f([k,n])");
}
