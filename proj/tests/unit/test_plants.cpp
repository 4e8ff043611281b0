#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dads/error.hpp"
#include "dads/lyapunov.hpp"
#include "dads/operators.hpp"
#include "dads/plants.hpp"

namespace dads {
namespace {

using std::numbers::pi;

HeatPlant unstable_heat() {
  HeatPlant p;
  p.coupling = Coupling::heat_unstable(1.0);
  p.theta1 = {Signal::constant(3), Profile{}};
  p.theta2 = Signal::constant(6);
  return p;
}

TransportPlant unstable_transport() {
  TransportPlant p;
  p.coupling = Coupling::transport_unstable(1.0, 4.0);
  p.theta11 = {Signal::constant(4), Profile{}};
  p.theta2 = Signal::constant(1);
  return p;
}

WavePlant unstable_wave() {
  WavePlant p;
  p.coupling = Coupling::wave_unstable();
  p.theta1 = {Signal::constant(2), Profile{}};
  p.theta2 = Signal::constant(2 + pi * pi);
  return p;
}

TEST(Coupling, FactoriesValidateArguments) {
  EXPECT_THROW(Coupling::bounded_integral(Profile::polynomial({2.0}), 0.5, 0.5), ConfigError);
  EXPECT_THROW(Coupling::bounded_integral(Profile::polynomial({0.5}), 1.5, 0.5), ConfigError);
  EXPECT_THROW(Coupling::transport_unstable(1.0, 3.0), ConfigError);
  EXPECT_NO_THROW(Coupling::transport_unstable(1.0, 4.0));
  EXPECT_TRUE(Coupling::transport_delay().supports(PlantKind::kTransport));
  EXPECT_FALSE(Coupling::heat_unstable(1).supports(PlantKind::kWave));
}

TEST(Coupling, KernelValues) {
  const Coupling h = Coupling::heat_unstable(1.0);
  EXPECT_NEAR(h.K(0.5, 2.0), (0.25 - 0.5 - 2.0) / 3.0 * 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(Coupling::transport_delay().K2(1.5), 1.5);
  EXPECT_NEAR(Coupling::wave_unstable().K(0.5, 3.0), 3.0, 1e-15);
}

TEST(Plant, ValidationRejectsBadInputs) {
  PlanarPlant p;
  p.b = Signal::constant(1.0);
  EXPECT_THROW(validate_plant(p), ConfigError);
  HeatPlant h = unstable_heat();
  h.p_bar = 0;
  EXPECT_THROW(validate_plant(h), ConfigError);
  WavePlant w = unstable_wave();
  w.coupling = Coupling::transport_delay();
  EXPECT_THROW(validate_plant(w), ConfigError);
  EXPECT_NO_THROW(validate_plant(unstable_transport()));
}

TEST(Plant, PlanarRhs) {
  PlanarPlant p;
  p.theta1 = Signal::constant(10);
  p.theta2 = Signal::constant(20);
  p.b = Signal::floor_clamp(Signal::constant(0.1), 0.1);
  p.d = Signal::sine(3, 1, 0);
  const PlanarState d = planar_rhs({-0.5, 0.1}, pi / 2, -2.0, p);
  EXPECT_NEAR(d.w, 0.5 + 1.0, 1e-15);
  EXPECT_NEAR(d.y, -10.0 - 0.2 + 3.0, 1e-14);
}

// The growing closed-form instance satisfies x' = x, so the semi-discrete
// right-hand side must reproduce the state up to discretization error.
TEST(Plant, UnstableInstancesAreEigenstates) {
  const std::vector<Plant> plants{unstable_heat(), unstable_transport(), unstable_wave()};
  for (const Plant& plant : plants) {
    DiscretePlant dp(plant, PhiSpec::zero(), 200);
    const auto x = analytic_unstable(plant, 0.3, 200);
    std::vector<double> dx(x.size());
    dp.derivative(0.3, x, 0.0, dx);
    double err = 0, scale = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      err = std::max(err, std::abs(dx[i] - x[i]));
      scale = std::max(scale, std::abs(x[i]));
    }
    EXPECT_LT(err / scale, 1e-3) << to_string(kind_of(plant));
  }
  EXPECT_THROW(analytic_unstable(PlanarPlant{}, 0, 10), ConfigError);
}

TEST(Plant, TypedRhsMatchesFlatForm) {
  const HeatPlant h = unstable_heat();
  FieldState s{Field::sample(16, Boundary::kDirichletBoth, [](double x) { return std::sin(pi * x); }), 0.4};
  const FieldState d = heat_rhs(s, 0.0, 1.0, h);
  DiscretePlant dp(h, PhiSpec::zero(), 16);
  std::vector<double> x(s.w.values().begin(), s.w.values().end());
  x.push_back(0.4);
  std::vector<double> dx(x.size());
  dp.derivative(0.0, x, 1.0, dx);
  for (std::size_t i = 0; i <= 16; ++i) EXPECT_DOUBLE_EQ(d.w[i], dx[i]);
  EXPECT_DOUBLE_EQ(d.y, dx.back());
}

TEST(Plant, TransportInflowIsPinned) {
  TransportPlant p;
  p.coupling = Coupling::transport_delay();
  p.theta12 = Signal::constant(1);
  const DiscretePlant dp(p, PhiSpec::zero(), 10);
  std::vector<double> x(12, 0.0);
  x.back() = 0.7;
  dp.apply_constraints(0.0, x);
  EXPECT_DOUBLE_EQ(x[0], 0.7);
}

TEST(Plant, RandomFieldsRespectBoundaries) {
  std::mt19937_64 rng(5);
  const auto d = random_smooth_field(rng, 32, true);
  EXPECT_EQ(d.front(), 0.0);
  EXPECT_EQ(d.back(), 0.0);
  const auto f = random_smooth_field(rng, 32, false);
  EXPECT_EQ(f.size(), 33u);
}

// Property suite: each built-in coupling honours its bound contract.
TEST(Properties, BoundCheckAllCouplings) {
  const PhiSpec phi({0.3, 0.2, 0, 0, 0});
  struct Case {
    Coupling coupling;
    PlantKind kind;
  };
  const std::vector<Case> cases{
      {Coupling::zero(), PlantKind::kHeat},
      {Coupling::bounded_integral(Profile::sine(1, 1.2), 0.9, 0.7), PlantKind::kHeat},
      {Coupling::bounded_integral(Profile::polynomial({0.5, 0.5}), -1.0, 1.0), PlantKind::kTransport},
      {Coupling::bounded_integral(Profile::sine(2), 0.5, -0.5), PlantKind::kWave},
      {Coupling::heat_unstable(1.0), PlantKind::kHeat},
      {Coupling::heat_unstable(0.2), PlantKind::kHeat},
      {Coupling::transport_unstable(1.0, 4.0), PlantKind::kTransport},
      {Coupling::transport_unstable(2.0, 10.0), PlantKind::kTransport},
      {Coupling::transport_delay(), PlantKind::kTransport},
      {Coupling::wave_unstable(), PlantKind::kWave},
  };
  for (const Case& c : cases) {
    const BoundCheckResult r = bound_check(c.coupling, c.kind, 10000, phi);
    EXPECT_TRUE(r.ok) << c.coupling.name() << ": " << r.first_violation;
    EXPECT_LE(r.worst_ratio, 1.0 + 1e-9) << c.coupling.name();
  }
}

TEST(Lyapunov, CaseConstantsMatchOracle) {
  const CaseConstants planar = case_constants(PlanarPlant{});
  EXPECT_DOUBLE_EQ(planar.k1, 1.0);
  EXPECT_DOUBLE_EQ(planar.g_const, 0.0);
  const CaseConstants heat = case_constants(unstable_heat());
  EXPECT_DOUBLE_EQ(heat.k1, 0.5);
  EXPECT_DOUBLE_EQ(heat.r, 1.0);
  EXPECT_NEAR(heat.g_const, 0.02900365125438989, 1e-16);
  const CaseConstants tr = case_constants(unstable_transport());
  EXPECT_DOUBLE_EQ(tr.k1, 2.0);
  EXPECT_NEAR(tr.k2, 5.43656365691809, 1e-14);
  EXPECT_NEAR(tr.r, 2.331643981597124, 1e-14);
  EXPECT_NEAR(tr.g_const, 59.1124487914452, 1e-12);
  const CaseConstants wave = case_constants(unstable_wave());
  EXPECT_DOUBLE_EQ(wave.k1, 1.0);
  EXPECT_NEAR(wave.k2, 3.0, 1e-15);
  EXPECT_NEAR(wave.r, 2.864025552833751, 1e-14);
  EXPECT_NEAR(wave.g_const, 8.202642367284676, 1e-14);
}

TEST(Lyapunov, PhiOnKnownFields) {
  const DiscretePlant tp(unstable_transport(), PhiSpec::zero(), 400);
  std::vector<double> ones(tp.state_size(), 1.0);
  EXPECT_NEAR(phi_case(tp, ones), 3.436563656918090, 1e-5);
  const DiscretePlant wp(unstable_wave(), PhiSpec::zero(), 400);
  std::vector<double> x(wp.state_size(), 0.0);
  for (std::size_t i = 0; i < wp.nodes(); ++i) x[i] = std::sin(pi * static_cast<double>(i) / 400.0);
  EXPECT_NEAR(phi_case(wp, x), 10.36960440108936, 1e-3);
  EXPECT_THROW(phi_case(wp, std::vector<double>(5, 0.0)), ConfigError);
}

TEST(Lyapunov, ClosedFormConstantsMatchOracle) {
  PlanarPlant p;
  p.theta1 = Signal::constant(10);
  p.theta2 = Signal::constant(20);
  p.b = Signal::floor_clamp(Signal::constant(0.1), 0.1);
  const DadsParams dp;
  const CaseConstants cc = case_constants(p);
  EXPECT_NEAR(mu_rate(dp, cc), 0.7619047619047619, 1e-15);
  for (double d : {0.0, 3.0}) {
    p.d = Signal::sine(d, 1, 0);
    const InputNorms n = input_norms(p);
    const double zbar = d == 0 ? 106901.8172207972 : 106910.8172207972;
    const double z = d == 0 ? 50904.52674231358 : 50908.81236394838;
    const double b = d == 0 ? 136400.6399738759 : 136412.4524130738;
    const double zmax = d == 0 ? 16.65169670185241 : 16.65178329915681;
    EXPECT_NEAR(z_sum(dp, cc, n, -10), zbar, 1e-13 * zbar);
    EXPECT_NEAR(z_bound(dp, cc, n, -10), z, 1e-13 * z);
    EXPECT_NEAR(b_bound(dp, cc, n, 0.25, 0.1, -10), b, 1e-13 * b);
    EXPECT_NEAR(z_window_upper(dp, cc, n, 0.25, 0.1, -10), zmax, 1e-13);
  }
  EXPECT_NEAR(tail_bound_y(dp), std::sqrt(1e-4), 1e-18);
  EXPECT_DOUBLE_EQ(tail_bound_w(dp, cc, input_limits(p)), std::sqrt(2 * 5e-5 * 100));
}

// Property suite: 10^3 random fields per case satisfy the norm equivalence.
TEST(Properties, NormEquivalenceAllCases) {
  PlanarPlant planar;
  HeatPlant heat = unstable_heat();
  heat.p_bar = 0.5;
  TransportPlant transport = unstable_transport();
  transport.c = 2.0;
  transport.coupling = Coupling::transport_unstable(2.0, 6.0);
  WavePlant wave = unstable_wave();
  wave.c = 1.5;
  wave.sigma = 0.7;
  const std::vector<Plant> plants{planar, unstable_heat(), heat, unstable_transport(), transport, unstable_wave(),
                                  wave};
  for (const Plant& p : plants) {
    const NormEquivResult r = norm_equiv_check(p, 1000);
    EXPECT_TRUE(r.ok) << to_string(kind_of(p)) << ": " << r.violation;
  }
}

}  // namespace
}  // namespace dads
