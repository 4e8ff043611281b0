#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dads/error.hpp"
#include "dads/signals.hpp"

namespace dads {
namespace {

TEST(Signal, EvaluatesLeaves) {
  EXPECT_DOUBLE_EQ(Signal::constant(2.5).eval(7), 2.5);
  EXPECT_DOUBLE_EQ(Signal::sine(3, 2, 0.5).eval(1.0), 3 * std::sin(2.5));
  EXPECT_DOUBLE_EQ(Signal::exp_decay(2, 0.5).eval(2.0), 2 * std::exp(-1.0));
  EXPECT_DOUBLE_EQ(Signal::floor_clamp(Signal::sine(1, 1, 0), 0.2).eval(4.0), 0.2);
}

TEST(Signal, ParsesPrefixTerms) {
  const Signal s = Signal::parse("sum(const(1), exp_decay(2, 1))");
  EXPECT_DOUBLE_EQ(s.eval(0), 3.0);
  EXPECT_DOUBLE_EQ(s.eval(1), 1 + 2 * std::exp(-1.0));
  EXPECT_EQ(Signal::parse(s.to_string()).to_string(), s.to_string());
  EXPECT_DOUBLE_EQ(Signal::parse("sin(3,1,0)").eval(0.5), 3 * std::sin(0.5));
}

TEST(Signal, RejectsMalformedTerms) {
  EXPECT_THROW(Signal::parse("sin(1,2,3,4)"), ConfigError);
  EXPECT_THROW(Signal::parse("cosine(1,2,3)"), ConfigError);
  EXPECT_THROW(Signal::parse("exp_decay(1, -1)"), ConfigError);
  EXPECT_THROW(Signal::parse("sum(const(1)"), ConfigError);
  EXPECT_THROW(Signal::parse("const(abc)"), ConfigError);
}

TEST(Signal, NormsAndLimits) {
  const Signal s = Signal::sum(Signal::sine(3, 1, 0), Signal::exp_decay(2, 1));
  EXPECT_DOUBLE_EQ(s.sup_norm(), 5.0);
  EXPECT_DOUBLE_EQ(s.limit_sup(), 3.0);
  const Signal b = Signal::floor_clamp(Signal::constant(0.1), 0.1);
  EXPECT_TRUE(b.has_positive_floor());
  EXPECT_DOUBLE_EQ(b.infimum(), 0.1);
  EXPECT_FALSE(Signal::constant(0.1).has_positive_floor());
  EXPECT_TRUE(Signal::constant(4).is_constant());
  EXPECT_FALSE(s.is_constant());
  EXPECT_DOUBLE_EQ(Signal::exp_decay(2, 1).limit_sup(), 0.0);
}

TEST(Profile, EvaluatesAndMeasures) {
  const Profile p = Profile::polynomial({0, -1, 1});
  EXPECT_DOUBLE_EQ(p.eval(0.5), -0.25);
  EXPECT_NEAR(p.l2_norm(), std::sqrt(1.0 / 30.0), 1e-15);
  EXPECT_NEAR(Profile::sine(1).l2_norm(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(Profile::sine(2, 3).eval(0.25), 3.0, 1e-15);
  const Profile t = Profile::table({0, 1, 0});
  EXPECT_DOUBLE_EQ(t.eval(0.25), 0.5);
  EXPECT_DOUBLE_EQ(t.sup_abs(), 1.0);
  EXPECT_EQ(Profile::parse(p.to_string()).to_string(), p.to_string());
}

TEST(SpaceTime, ParsesAndMeasures) {
  const SpaceTimeSignal s = SpaceTimeSignal::parse("st(sin(2,1,0), sine(1))");
  EXPECT_NEAR(s.sup_l2(), 2 * std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(s.eval(std::acos(0.0), 0.5), 2.0, 1e-15);
  const SpaceTimeSignal bare = SpaceTimeSignal::parse("const(3)");
  EXPECT_DOUBLE_EQ(bare.eval(1, 0.3), 3.0);
}

// Random composite signals stay inside their reported ranges.
TEST(Properties, SamplesStayInRange) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> amp(-4, 4), rate(0.1, 3), ts(0, 50);
  std::uniform_int_distribution<int> pick(0, 5);
  const auto leaf = [&]() {
    switch (pick(rng) % 3) {
      case 0:
        return Signal::constant(amp(rng));
      case 1:
        return Signal::sine(amp(rng), rate(rng), amp(rng));
      default:
        return Signal::exp_decay(amp(rng), rate(rng));
    }
  };
  for (int i = 0; i < 10000; ++i) {
    Signal s = leaf();
    switch (pick(rng)) {
      case 0:
        s = Signal::sum(s, leaf());
        break;
      case 1:
        s = Signal::product(s, leaf());
        break;
      case 2:
        s = Signal::floor_clamp(s, amp(rng));
        break;
      default:
        break;
    }
    const Range r = s.range();
    const Range a = s.asymptotic_range();
    ASSERT_LE(r.lo, a.lo + 1e-12);
    ASSERT_GE(r.hi, a.hi - 1e-12);
    for (int k = 0; k < 4; ++k) {
      const double v = s.eval(ts(rng));
      ASSERT_GE(v, r.lo - 1e-12) << s.to_string();
      ASSERT_LE(v, r.hi + 1e-12) << s.to_string();
    }
    ASSERT_EQ(Signal::parse(s.to_string()).to_string(), s.to_string());
  }
}

}  // namespace
}  // namespace dads
