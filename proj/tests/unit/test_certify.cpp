#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dads/certify.hpp"
#include "dads/error.hpp"
#include "dads/simulation.hpp"

namespace dads {
namespace {

Scenario planar_scenario(double d_amp, double horizon) {
  PlanarPlant p;
  p.theta1 = Signal::constant(10);
  p.theta2 = Signal::constant(20);
  p.b = Signal::floor_clamp(Signal::constant(0.1), 0.1);
  p.d = Signal::sine(d_amp, 1, 0);
  Scenario s;
  s.plant = p;
  s.init.w = -0.5;
  s.init.y = 0.1;
  s.init.z = -10;
  s.horizon = horizon;
  s.dt = 1e-3;
  s.stride = 10;
  return s;
}

TEST(Simulation, StableStepHonoursCaps) {
  Scenario s = planar_scenario(0, 1);
  s.dt = 0;
  EXPECT_DOUBLE_EQ(stable_dt(s), 1e-3);
  EXPECT_DOUBLE_EQ(stable_dt(s, 999), 1e-4);
  HeatPlant h;
  s.plant = h;
  s.intervals = 50;
  EXPECT_NEAR(stable_dt(s), 0.4 / 2500 / 2, 1e-18);
  s.dt = 1e-6;
  EXPECT_DOUBLE_EQ(stable_dt(s), 1e-6);
}

TEST(Simulation, EffectiveGain) {
  const Scenario s = planar_scenario(0, 1);
  const double k = effective_gain(s, DadsParams{}, GainProfile::constant(7.5, 43.5, 24));
  EXPECT_NEAR(k, 0.1 * std::pow(2.1 + std::exp(-10.0), 7) * (7.5 + 43.5 * 0.01 + 24e-6), 1e-9);
}

TEST(Simulation, ZIsMonotoneAndSamplesAreConsistent) {
  const Scenario s = planar_scenario(3, 5);
  const Trajectory tr = simulate(s, DadsParams{}, GainProfile::constant(7.5, 43.5, 24));
  ASSERT_FALSE(tr.aborted);
  const auto steps = static_cast<std::size_t>(std::llround(5.0 / tr.dt));
  EXPECT_EQ(tr.size(), steps / 10 + 1 + (steps % 10 != 0 ? 1 : 0));
  EXPECT_DOUBLE_EQ(tr.t.back(), 5.0);
  for (std::size_t i = 1; i < tr.size(); ++i) ASSERT_GE(tr.z[i], tr.z[i - 1]);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    ASSERT_NEAR(tr.v[i], 0.5 * tr.y[i] * tr.y[i], 1e-15);
    ASSERT_NEAR(tr.phi[i], tr.w_norm[i] * tr.w_norm[i], 1e-12);
  }
}

TEST(Simulation, FingerprintTracksScenario) {
  const DadsParams p;
  const GainProfile g = GainProfile::constant(7.5, 43.5, 24);
  const Trajectory a = simulate(planar_scenario(0, 0.1), p, g);
  const Trajectory b = simulate(planar_scenario(0, 0.1), p, g);
  const Trajectory c = simulate(planar_scenario(1, 0.1), p, g);
  EXPECT_EQ(a.fingerprint, b.fingerprint);
  EXPECT_NE(a.fingerprint, c.fingerprint);
  EXPECT_EQ(a.fingerprint.size(), 16u);
}

TEST(Simulation, AbortsOnBlowup) {
  Scenario s = planar_scenario(0, 5);
  s.blowup = 10;
  const Trajectory tr = simulate_open_loop(s);
  EXPECT_TRUE(tr.aborted);
  EXPECT_NE(tr.abort_reason.find("exceeded"), std::string::npos);
  EXPECT_LT(tr.t.back(), 5.0);
}

TEST(Simulation, PrescribedOutputIsFollowed) {
  Scenario s = planar_scenario(0, 1);
  const Trajectory tr = simulate_open_loop(s, Signal::sine(1, 1, 0));
  for (std::size_t i = 0; i < tr.size(); ++i) ASSERT_NEAR(tr.y[i], std::sin(tr.t[i]), 1e-15);
}

TEST(Certify, PlanarRunPassesEveryCheck) {
  const Scenario s = planar_scenario(0, 20);
  const DadsParams p;
  const Trajectory tr = simulate(s, p, GainProfile::constant(7.5, 43.5, 24));
  const CertReport rep = certify(tr, s, p);
  ASSERT_EQ(rep.checks.size(), 4u);
  for (const CheckRecord& c : rep.checks) {
    EXPECT_TRUE(c.passed()) << c.name << " slack " << c.worst_slack << " " << c.note;
    EXPECT_GE(c.worst_slack, -c.tolerance) << c.name;
  }
  EXPECT_NEAR(rep.constants.at("mu"), 0.7619047619047619, 1e-15);
  EXPECT_NEAR(rep.constants.at("Z"), 50904.52674231358, 1e-8);
  EXPECT_NEAR(rep.constants.at("B"), 136400.6399738759, 1e-8);
  // b = 0.1 lies below 1 / kappa, so the dichotomy statement does not apply.
  EXPECT_EQ(rep.dichotomy.classification, DichotomyClass::kNotApplicable);
  EXPECT_LT(rep.dichotomy.tail_y, 1e-3);
}

TEST(Certify, TailsInconclusiveWhileZDrifts) {
  const Scenario s = planar_scenario(3, 4);
  const DadsParams p;
  const Trajectory tr = simulate(s, p, GainProfile::constant(7.5, 43.5, 24));
  const CertReport rep = certify(tr, s, p);
  const auto it = std::find_if(rep.checks.begin(), rep.checks.end(), [](const auto& c) { return c.name == "tails"; });
  ASSERT_NE(it, rep.checks.end());
  EXPECT_EQ(it->status, CheckStatus::kInconclusive);
  EXPECT_FALSE(rep.all_passed());
}

TEST(Certify, TransientDetectsViolation) {
  const Scenario s = planar_scenario(0, 1);
  const DadsParams p;
  Trajectory tr = simulate(s, p, GainProfile::constant(7.5, 43.5, 24));
  tr.y[50] = 1e4;
  const CheckRecord r = check_transient(tr, p, case_constants(s.plant), input_norms(s.plant));
  EXPECT_EQ(r.status, CheckStatus::kFail);
  EXPECT_LT(r.worst_slack, 0.0);
  EXPECT_DOUBLE_EQ(r.worst_t, tr.t[50]);
}

TEST(Certify, ZWindowDetectsDecrease) {
  const Scenario s = planar_scenario(0, 1);
  const DadsParams p;
  Trajectory tr = simulate(s, p, GainProfile::constant(7.5, 43.5, 24));
  tr.z[10] = tr.z[9] - 1e-3;
  const CheckRecord r = check_z_window(tr, p, case_constants(s.plant), input_norms(s.plant));
  EXPECT_EQ(r.status, CheckStatus::kFail);
}

TEST(SmallGain, ThresholdAndHurwitzTest) {
  EXPECT_DOUBLE_EQ(small_gain_threshold(10, 20, 1, 0.1), 2000.0);
  EXPECT_DOUBLE_EQ(small_gain_threshold(0, 20, 1, 0.1), 0.0);
  EXPECT_TRUE(is_hurwitz_2x2(planar_linear_matrix(10, 20, 1, 0.1, 2001)));
  EXPECT_FALSE(is_hurwitz_2x2(planar_linear_matrix(10, 20, 1, 0.1, 1999)));
  EXPECT_FALSE(is_hurwitz_2x2(planar_linear_matrix(10, 20, 1, 0.1, 2000)));
  EXPECT_LT(spectral_abscissa_2x2(planar_linear_matrix(10, 20, 1, 0.1, 2001)), 0.0);
  EXPECT_GT(spectral_abscissa_2x2(planar_linear_matrix(10, 20, 1, 0.1, 1999)), 0.0);
  EXPECT_NEAR(spectral_abscissa_2x2({-1, 0, 0, -3}), -1.0, 1e-15);
}

TEST(Oracles, DelayLineMatchesShiftedOutput) {
  TransportPlant p;
  p.coupling = Coupling::transport_delay();
  p.theta12 = Signal::constant(1);
  Scenario s;
  s.plant = p;
  s.intervals = 100;
  s.horizon = 2;
  s.init.delay_history = true;
  s.snapshot_stride = 10;
  const Signal y = Signal::sine(1, 1, 0);
  const Trajectory tr = simulate_open_loop(s, y);
  const CheckRecord r = check_delay_oracle(tr, s, y, 0.01);
  EXPECT_TRUE(r.passed()) << r.constants.at("max_abs_error");
  EXPECT_THROW(check_analytic_oracle(tr, s, 1e-3), ConfigError);
}

}  // namespace
}  // namespace dads
