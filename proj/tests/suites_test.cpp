#include <gtest/gtest.h>

#include "multclass/suites.hpp"

using namespace multclass;

// Every suite passes on a small window; the acceptance binary runs the full sizes.
TEST(Suites, AllPassOnSmallWindows) {
  for (const auto& [name, run] : suites::registry()) {
    const suites::SuiteResult r = run(24);
    EXPECT_TRUE(r.passed) << name << ": " << (r.failures.empty() ? "" : r.failures.front());
    EXPECT_GT(r.checks, 0u) << name;
    EXPECT_EQ(r.name, name);
  }
}

TEST(Suites, CorpusShape) {
  const auto corpus = suites::standard_corpus(48);
  EXPECT_EQ(corpus.size(), 3u + 48u + 48u + 4u * 14u);
  for (const auto& f : suites::control_corpus()) {
    EXPECT_EQ(check_semimultiplicative(f, 64).verdict, Verdict::refuted) << f.name();
  }
}

TEST(Suites, FailuresAreCapped) {
  suites::SuiteResult r("x", 2);
  for (int i = 0; i < 25; ++i) r.fail("f" + std::to_string(i));
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.failures.size(), 10u);
}
