#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dads/controller.hpp"
#include "dads/error.hpp"

namespace dads {
namespace {

// Frozen from tests/oracles/arithmetic_oracle.py (30-digit arithmetic).
constexpr double kP1 = 1.149708053136739;
constexpr double kP2 = 23.77681041445258;
constexpr double kP3 = 0.02847972616862316;

TEST(GainBounds, MatchOracleWithZeroPhi) {
  const GainTriple g = min_gain_bounds(DadsParams{}, PhiSpec::zero(), 0.3);
  EXPECT_NEAR(g.p1, kP1, 1e-13 * kP1);
  EXPECT_NEAR(g.p2, kP2, 1e-13 * kP2);
  EXPECT_NEAR(g.p3, kP3, 1e-13 * kP3);
}

TEST(GainBounds, MatchOracleWithConstantPhi) {
  const PhiSpec phi({0.5, 0, 0, 0, 0});
  const GainTriple g = min_gain_bounds(DadsParams{}, phi, 7.0);
  EXPECT_NEAR(g.p1, 1.161950649487809, 1e-13);
  EXPECT_NEAR(g.p2, 24.33116129852719, 1e-12);
  EXPECT_NEAR(g.p3, 0.03030148189283272, 1e-15);
}

TEST(GainBounds, QuadraticPhiMakesBoundsGrow) {
  const PhiSpec phi({0.0, 1.0, 0, 0, 0});
  const DadsParams p;
  const GainTriple lo = min_gain_bounds(p, phi, 0.0);
  const GainTriple hi = min_gain_bounds(p, phi, 2.0);
  EXPECT_GT(hi.p1, lo.p1);
  EXPECT_GT(hi.p2, lo.p2);
  EXPECT_GT(hi.p3, lo.p3);
}

TEST(GainBounds, ConstantGainsDominateMinima) {
  const DadsParams p;
  const auto check = verify_gains(GainProfile::constant(7.5, 43.5, 24), p, PhiSpec::zero(),
                                  linspace(-10, 10, 10001));
  EXPECT_TRUE(check.ok);
  EXPECT_GT(check.min_relative_slack, 0.0);
}

TEST(GainBounds, DetectsFailingGain) {
  const auto check = verify_gains(GainProfile::constant(7.5, 20.0, 24), DadsParams{}, PhiSpec::zero(),
                                  linspace(-1, 1, 11));
  EXPECT_FALSE(check.ok);
  EXPECT_EQ(check.failing_index, 2);
  ASSERT_TRUE(check.first_failing_y.has_value());
  EXPECT_DOUBLE_EQ(*check.first_failing_y, -1.0);
}

TEST(GainBounds, SynthesizedProfileHasZeroSlack) {
  const DadsParams p;
  const GainProfile g = make_gain_profile(p, PhiSpec::zero(), 1.0);
  const GainTriple v = g.at(0.7);
  EXPECT_DOUBLE_EQ(v.p1, min_gain_bounds(p, PhiSpec::zero(), 0.7).p1);
  EXPECT_TRUE(verify_gains(g, p, PhiSpec::zero(), linspace(-10, 10, 101)).ok);
  EXPECT_THROW(make_gain_profile(p, PhiSpec::zero(), 0.9), ConfigError);
}

TEST(Params, RejectsTwoKappaNotAboveA) {
  DadsParams p;
  p.a = 2 * p.kappa;
  const auto bad = validate_params(p);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0], "2*kappa > a");
  DadsParams q;
  q.epsilon = 0;
  EXPECT_FALSE(validate_params(q).empty());
}

TEST(Control, MatchesOracle) {
  const double u = control(0.1, -10.0, DadsParams{}, GainProfile::constant(7.5, 43.5, 24));
  EXPECT_NEAR(u, -142.9384374358633, 1e-12);
}

TEST(UpdateLaw, MatchesOracle) {
  EXPECT_NEAR(update_rate(0.1, 0.0, DadsParams{}), 0.495, 1e-15);
  EXPECT_EQ(update_rate(0.01, 0.0, DadsParams{}), 0.0);
}

TEST(Excess, MatchesOracle) {
  const DadsParams p;
  EXPECT_NEAR(g_excess(20, -10, p), 320.4083746845757, 1e-11);
  EXPECT_NEAR(g_excess(10, -10, p), 62.40928268317091, 1e-12);
  EXPECT_EQ(g_excess(1.0, 0.0, p), 0.0);
}

TEST(Linspace, Endpoints) {
  const auto v = linspace(-2, 3, 6);
  ASSERT_EQ(v.size(), 6u);
  EXPECT_EQ(v.front(), -2.0);
  EXPECT_EQ(v.back(), 3.0);
  EXPECT_DOUBLE_EQ(v[1], -1.0);
}

// Property suites.

TEST(Properties, DeadzoneIsExact) {
  const DadsParams p;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ys(-0.05, 0.05), zs(-20, 20);
  const double edge = std::sqrt(2 * p.epsilon);
  for (int i = 0; i < 100000; ++i) {
    // Every fourth sample sits right at the deadzone edge.
    double y = ys(rng);
    if (i % 4 == 0) y = std::copysign(edge, y) * (1 + (i % 8 == 0 ? 1e-9 : -1e-9));
    const double z = zs(rng);
    const double rate = update_rate(y, z, p);
    ASSERT_GE(rate, 0.0);
    ASSERT_EQ(rate == 0.0, y * y <= 2 * p.epsilon) << "y=" << y << " z=" << z;
  }
}

TEST(Properties, ControlIsOdd) {
  const DadsParams p;
  const GainProfile g = GainProfile::constant(7.5, 43.5, 24);
  const GainProfile s = make_gain_profile(p, PhiSpec({0.2, 0.1, 0, 0.01, 0}), 1.5);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ys(-5, 5), zs(-10, 5);
  for (int i = 0; i < 100000; ++i) {
    const double y = ys(rng), z = zs(rng);
    ASSERT_EQ(control(-y, z, p, g), -control(y, z, p, g));
    ASSERT_EQ(control(-y, z, p, s), -control(y, z, p, s));
    ASSERT_LE(control(y, z, p, g) * y, 0.0);
  }
}

TEST(Properties, ExcessIsMonotone) {
  const DadsParams p;
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ss(0, 50), ls(-20, 5), ds(0, 3);
  for (int i = 0; i < 100000; ++i) {
    const double s = ss(rng), l = ls(rng), ds1 = ds(rng), dl = ds(rng);
    const double g0 = g_excess(s, l, p);
    ASSERT_GE(g0, 0.0);
    ASSERT_GE(g_excess(s + ds1, l, p), g0);
    ASSERT_LE(g_excess(s, l + dl, p), g0);
  }
}

}  // namespace
}  // namespace dads
