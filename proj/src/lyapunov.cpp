#include "dads/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "dads/error.hpp"
#include "dads/operators.hpp"

namespace dads {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

double wave_g(double c, double sigma) {
  const double c2 = c * c;
  return 2.0 * ((c2 + 1.0) * (c2 + 1.0) * kPi * kPi + sigma * sigma) / (sigma * sigma * c2 * c2 * kPi * kPi);
}

// Case norm of theta1 built from per-component magnitudes.
double theta1_case_norm(const Plant& plant, bool asymptotic) {
  auto mag = [&](const Signal& s) { return asymptotic ? s.limit_sup() : s.sup_norm(); };
  auto mag_st = [&](const SpaceTimeSignal& s) { return asymptotic ? s.limsup_l2() : s.sup_l2(); };
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PlanarPlant>) {
          return mag(p.theta1);
        } else if constexpr (std::is_same_v<T, TransportPlant>) {
          // sqrt(theta12^2 + (4e/c) ||theta11||^2), bounded componentwise.
          const double a = mag(p.theta12);
          const double b = mag_st(p.theta11);
          return std::sqrt(a * a + 4.0 * kE / p.c * b * b);
        } else {
          return mag_st(p.theta1);
        }
      },
      plant);
}

const SpaceTimeSignal* delta_of(const Plant& plant) {
  return std::visit(
      [](const auto& p) -> const SpaceTimeSignal* {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PlanarPlant>) {
          return nullptr;
        } else {
          return &p.delta;
        }
      },
      plant);
}

InputNorms collect(const Plant& plant, bool asymptotic) {
  auto mag = [&](const Signal& s) { return asymptotic ? s.limit_sup() : s.sup_norm(); };
  InputNorms n;
  n.d = mag(d_signal(plant));
  n.theta1 = theta1_case_norm(plant, asymptotic);
  n.theta2 = std::visit([&](const auto& p) { return mag(p.theta2); }, plant);
  const Signal& b = b_signal(plant);
  n.b_inf = asymptotic ? b.limit_inf() : b.infimum();
  if (const SpaceTimeSignal* delta = delta_of(plant)) n.delta = asymptotic ? delta->limsup_l2() : delta->sup_l2();
  return n;
}

}  // namespace

CaseConstants case_constants(const Plant& plant) {
  return std::visit(
      [](const auto& p) -> CaseConstants {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PlanarPlant>) {
          return {1.0 / p.p_bar, 1.0 / p.p_bar, 1.0 / p.p_bar, 0.0};
        } else if constexpr (std::is_same_v<T, HeatPlant>) {
          return {0.5 / p.p_bar, 0.5 / p.p_bar, 1.0 / p.p_bar, 1.0 / (p.p_bar * p.p_bar * (4.0 * kPi * kPi - 5.0))};
        } else if constexpr (std::is_same_v<T, TransportPlant>) {
          return {2.0 / p.c, 2.0 * kE / p.c, std::sqrt(2.0 * kE), 8.0 * kE * kE / (p.c * p.c)};
        } else {
          const double c2 = p.c * p.c;
          const double k2 =
              std::max(c2 + 1.0 + 2.0 * p.sigma * p.sigma / (c2 * kPi * kPi), 1.0 + 2.0 / c2) / p.sigma;
          const double g = wave_g(p.c, p.sigma);
          return {1.0 / p.sigma, k2, std::sqrt(g), g};
        }
      },
      plant);
}

double phi_case(const DiscretePlant& dp, std::span<const double> state) {
  if (state.size() != dp.state_size() && state.size() + 1 != dp.state_size()) {
    throw ConfigError("state size does not match the " + std::string(to_string(dp.kind())) + " plant");
  }
  const std::size_t n = dp.nodes();
  const double h = dp.spacing();
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PlanarPlant>) {
          return state[0] * state[0] / p.p_bar;
        } else if constexpr (std::is_same_v<T, HeatPlant>) {
          return l2_norm_sq(state.subspan(0, n), h) / (2.0 * p.p_bar);
        } else if constexpr (std::is_same_v<T, TransportPlant>) {
          double acc = 0.5 * (state[0] * state[0] + std::exp(-1.0) * state[n - 1] * state[n - 1]);
          for (std::size_t i = 1; i + 1 < n; ++i) acc += std::exp(-static_cast<double>(i) * h) * state[i] * state[i];
          return 2.0 * kE / p.c * acc * h;
        } else {
          const auto v = state.subspan(0, n);
          const auto phi = state.subspan(n, n);
          std::vector<double> mix(n);
          for (std::size_t i = 0; i < n; ++i) mix[i] = phi[i] + p.sigma * v[i];
          const double c2 = p.c * p.c;
          return (c2 + 1.0) / p.sigma * gradient_norm_sq(v, h) + l2_norm_sq(phi, h) / p.sigma +
                 l2_norm_sq(mix, h) / (p.sigma * c2);
        }
      },
      dp.plant());
}

NormEquivResult norm_equiv_check(const Plant& plant, std::size_t n_fields, std::size_t intervals,
                                 std::uint64_t seed) {
  // Relative allowance for quadrature and difference-quotient error.
  constexpr double kTol = 1e-3;
  NormEquivResult result;
  DiscretePlant dp(plant, PhiSpec::zero(), kind_of(plant) == PlantKind::kPlanar ? 0 : intervals);
  const CaseConstants cc = case_constants(plant);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> sym(-10.0, 10.0);
  result.min_lower_slack = INFINITY;
  result.min_upper_slack = INFINITY;

  for (std::size_t k = 0; k < n_fields; ++k) {
    std::vector<double> x = dp.zero_state();
    switch (dp.kind()) {
      case PlantKind::kPlanar:
        x[0] = sym(rng);
        break;
      case PlantKind::kHeat:
      case PlantKind::kTransport: {
        const auto f = random_smooth_field(rng, intervals, dp.kind() == PlantKind::kHeat);
        std::copy(f.begin(), f.end(), x.begin());
        break;
      }
      case PlantKind::kWave: {
        const auto v = random_smooth_field(rng, intervals, true);
        const auto phi = random_smooth_field(rng, intervals, true);
        std::copy(v.begin(), v.end(), x.begin());
        std::copy(phi.begin(), phi.end(), x.begin() + static_cast<std::ptrdiff_t>(dp.nodes()));
        break;
      }
    }
    const double norm = dp.state_norm(x);
    const double norm_sq = norm * norm;
    if (norm_sq == 0.0) continue;
    const double phi = phi_case(dp, x);
    const double lower = (phi - cc.k1 * norm_sq) / norm_sq;
    const double upper = (cc.k2 * norm_sq - phi) / norm_sq;
    result.min_lower_slack = std::min(result.min_lower_slack, lower);
    result.min_upper_slack = std::min(result.min_upper_slack, upper);
    if (result.ok && (lower < -kTol * cc.k1 || upper < -kTol * cc.k2)) {
      result.ok = false;
      std::ostringstream what;
      what << "field " << k << ": k1||w||^2=" << cc.k1 * norm_sq << ", Phi=" << phi << ", k2||w||^2=" << cc.k2 * norm_sq;
      result.violation = what.str();
    }
  }
  return result;
}

InputNorms input_norms(const Plant& plant) { return collect(plant, false); }
InputNorms input_limits(const Plant& plant) { return collect(plant, true); }

double mu_rate(const DadsParams& p, const CaseConstants& cc) {
  return std::min((2.0 * p.kappa - p.a) / (2.0 * p.kappa * cc.k2), 2.0 * p.c_decay);
}

double z_sum(const DadsParams& p, const CaseConstants& cc, const InputNorms& n, double z0) {
  const double g2 = g_excess(n.theta2, z0, p);
  const double gb = g_excess(1.0 / n.b_inf, z0, p);
  const double g1 = g_excess(cc.r * n.theta1, z0, p);
  return n.d * n.d + g2 + g2 * g2 + 4.0 * n.b_inf * gb + g1 * g1;
}

double z_bound(const DadsParams& p, const CaseConstants& cc, const InputNorms& n, double z0) {
  return cc.g_const * n.delta * n.delta + p.a / (p.kappa + std::exp(z0)) * z_sum(p, cc, n, z0);
}

double b_bound(const DadsParams& p, const CaseConstants& cc, const InputNorms& n, double w0_norm_sq, double y0,
               double z0) {
  const double mu = mu_rate(p, cc);
  const double z = z_bound(p, cc, n, z0);
  const double g2 = g_excess(n.theta2, z0, p);
  const double gb = g_excess(1.0 / n.b_inf, z0, p);
  return (cc.k2 * w0_norm_sq + 0.5 * y0 * y0 + z / mu) / (2.0 * cc.k1) + g2 + n.d * n.d + g2 * g2 +
         2.0 * n.b_inf * gb;
}

double z_window_upper(const DadsParams& p, const CaseConstants& cc, const InputNorms& n, double w0_norm_sq,
                      double y0, double z0) {
  const double b = b_bound(p, cc, n, w0_norm_sq, y0, z0);
  const double ez0 = std::exp(z0);
  const double c = p.c_decay;
  const double num = 2.0 * c * (1.0 + ez0) + p.epsilon * p.gamma;
  const double den = 4.0 * c * c * p.epsilon * std::min(1.0, p.kappa) * (1.0 + ez0);
  return std::log(ez0 + p.gamma / (4.0 * c) * y0 * y0 + p.a * b * num / den);
}

double tail_bound_w(const DadsParams& p, const CaseConstants& cc, const InputNorms& limits) {
  return std::sqrt(cc.k2 / cc.k1 *
                   (2.0 * p.epsilon * cc.r * cc.r * limits.theta1 * limits.theta1 +
                    cc.g_const * limits.delta * limits.delta));
}

double tail_bound_y(const DadsParams& p) { return std::sqrt(2.0 * p.epsilon); }

}  // namespace dads
