#include "dads/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>

#include "dads/error.hpp"
#include "dads/integrator.hpp"
#include "dads/lyapunov.hpp"
#include "term_parser.hpp"

namespace dads {

namespace {

using detail::format_double;

std::string describe_plant(const Plant& plant) {
  std::ostringstream os;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PlanarPlant>) {
          os << "planar p_bar=" << format_double(p.p_bar) << " theta1=" << p.theta1.to_string()
             << " theta2=" << p.theta2.to_string();
        } else if constexpr (std::is_same_v<T, HeatPlant>) {
          os << "heat p_bar=" << format_double(p.p_bar) << " coupling=" << p.coupling.name()
             << " theta1=" << p.theta1.to_string() << " delta=" << p.delta.to_string()
             << " theta2=" << p.theta2.to_string();
        } else if constexpr (std::is_same_v<T, TransportPlant>) {
          os << "transport c=" << format_double(p.c) << " coupling=" << p.coupling.name()
             << " theta11=" << p.theta11.to_string() << " theta12=" << p.theta12.to_string()
             << " delta=" << p.delta.to_string() << " theta2=" << p.theta2.to_string();
        } else {
          os << "wave c=" << format_double(p.c) << " sigma=" << format_double(p.sigma)
             << " coupling=" << p.coupling.name() << " theta1=" << p.theta1.to_string()
             << " delta=" << p.delta.to_string() << " theta2=" << p.theta2.to_string();
        }
        os << " b=" << p.b.to_string() << " d=" << p.d.to_string();
      },
      plant);
  return os.str();
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[h & 0xf];
    h >>= 4;
  }
  return out;
}

// Closed-loop ingredients: the feedback value and the z rate at a stage.
struct LoopLaw {
  std::function<double(double y, double z)> feedback;
  std::function<double(double y, double z)> z_rate;
  std::string label;
};

Trajectory drive(const Scenario& s, double k_eff, const LoopLaw& law, const std::optional<Signal>& prescribed) {
  if (!(s.horizon > 0)) throw ConfigError("horizon must be positive");
  if (s.stride == 0) throw ConfigError("stride must be at least 1");
  if (s.dt < 0) throw ConfigError("dt must be positive");

  DiscretePlant dp(s.plant, s.phi, s.intervals);
  const std::size_t n = dp.state_size();
  const std::size_t yi = dp.y_index();
  const std::size_t zi = n;

  const double dt_cap = stable_dt(s, k_eff);
  const auto steps = static_cast<std::size_t>(std::ceil(s.horizon / dt_cap - 1e-9));
  const double dt = s.horizon / static_cast<double>(steps);

  Trajectory traj;
  traj.kind = dp.kind();
  traj.intervals = dp.kind() == PlantKind::kPlanar ? 0 : s.intervals;
  traj.dt = dt;
  traj.stride = s.stride;
  traj.fingerprint = fnv1a_hex(describe(s) + " law=" + law.label);
  const std::size_t samples = steps / s.stride + 2;
  for (auto* series : {&traj.t, &traj.y, &traj.z, &traj.u, &traj.w_norm, &traj.phi, &traj.v}) {
    series->reserve(samples);
  }

  std::vector<double> x = initial_state(dp, s.init);
  x.push_back(s.init.z);
  if (prescribed) {
    x[yi] = prescribed->eval(0.0);
    if (s.init.delay_history && dp.kind() == PlantKind::kTransport) {
      const double c = std::get<TransportPlant>(s.plant).c;
      for (std::size_t i = 0; i < dp.nodes(); ++i) x[i] = prescribed->eval(-static_cast<double>(i) * dp.spacing() / c);
    }
    dp.apply_constraints(0.0, x);
  }

  std::vector<double> stage(n + 1);
  RhsFn rhs = [&](double t, std::span<const double> xs, std::span<double> dx) {
    std::span<const double> state = xs;
    if (prescribed) {
      std::copy(xs.begin(), xs.end(), stage.begin());
      stage[yi] = prescribed->eval(t);
      state = stage;
    }
    const double y = state[yi];
    const double z = state[zi];
    dp.derivative(t, state.first(n), law.feedback(y, z), dx.first(n));
    if (prescribed) dx[yi] = 0.0;
    dx[zi] = law.z_rate(y, z);
  };

  auto record = [&](double t) {
    const double y = x[yi];
    const double z = x[zi];
    traj.t.push_back(t);
    traj.y.push_back(y);
    traj.z.push_back(z);
    traj.u.push_back(law.feedback(y, z));
    traj.w_norm.push_back(dp.state_norm(std::span<const double>(x).first(n)));
    traj.phi.push_back(phi_case(dp, std::span<const double>(x).first(n)));
    traj.v.push_back(lyapunov_V(y));
  };
  auto snapshot = [&](std::size_t k, double t) {
    if (s.snapshot_stride > 0 && (k % s.snapshot_stride == 0 || k == steps)) traj.snapshots.push_back({t, x});
  };

  record(0.0);
  snapshot(0, 0.0);
  Rk4 stepper(n + 1);
  std::vector<double> last_good(n + 1);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t0 = static_cast<double>(k - 1) * dt;
    const double t1 = static_cast<double>(k) * dt;
    std::copy(x.begin(), x.end(), last_good.begin());
    try {
      stepper.step(rhs, x, t0, dt);
    } catch (const NumericalError& e) {
      x = last_good;
      traj.aborted = true;
      traj.abort_reason = e.what();
      break;
    }
    if (prescribed) x[yi] = prescribed->eval(t1);
    dp.apply_constraints(t1, x);

    const double size = std::max(std::abs(x[yi]), dp.state_norm(std::span<const double>(x).first(n)));
    if (!(size <= s.blowup)) {
      traj.aborted = true;
      traj.abort_reason = "state norm exceeded " + format_double(s.blowup) + " at t=" + format_double(t1);
      break;
    }
    if (x[zi] > s.z_cap) {
      traj.aborted = true;
      traj.abort_reason = "z exceeded " + format_double(s.z_cap) + " at t=" + format_double(t1);
      break;
    }
    // The final step is always recorded.
    if (k % s.stride == 0 || k == steps) record(t1);
    snapshot(k, t1);
  }
  return traj;
}

}  // namespace

std::string describe(const Scenario& s) {
  std::ostringstream os;
  os << describe_plant(s.plant) << " N=" << s.intervals << " T=" << format_double(s.horizon)
     << " dt=" << format_double(s.dt) << " stride=" << s.stride << " w0=" << format_double(s.init.w)
     << " field0=" << s.init.field.to_string() << " velocity0=" << s.init.velocity.to_string()
     << " y0=" << format_double(s.init.y) << " z0=" << format_double(s.init.z)
     << " history=" << (s.init.delay_history ? 1 : 0);
  return os.str();
}

double effective_gain(const Scenario& s, const DadsParams& p, const GainProfile& g) {
  const double scale = std::pow(p.kappa + std::exp(s.init.z), 7);
  return b_signal(s.plant).eval(0.0) * scale * g.damping(s.init.y);
}

double stable_dt(const Scenario& s, double k_eff) {
  double dt = 0.0;
  const double h = 1.0 / static_cast<double>(std::max<std::size_t>(s.intervals, 1));
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PlanarPlant>) {
          dt = std::min(1e-3, 0.1 / (1.0 + std::abs(k_eff)));
        } else if constexpr (std::is_same_v<T, HeatPlant>) {
          dt = 0.4 * h * h / (2.0 * p.p_bar);
        } else {
          dt = 0.9 * h / p.c;
        }
      },
      s.plant);
  // The feedback adds a stiff mode of size about b k_eff in every case.
  dt = std::min(dt, 0.1 / (1.0 + std::abs(k_eff)));
  if (s.dt > 0) dt = std::min(dt, s.dt);
  return dt;
}

std::vector<double> initial_state(const DiscretePlant& dp, const InitialCondition& init) {
  std::vector<double> x = dp.zero_state();
  const std::size_t n = dp.nodes();
  const double h = dp.spacing();
  switch (dp.kind()) {
    case PlantKind::kPlanar:
      x[0] = init.w;
      break;
    case PlantKind::kHeat:
    case PlantKind::kTransport:
      for (std::size_t i = 0; i < n; ++i) x[i] = init.field.eval(static_cast<double>(i) * h);
      if (dp.kind() == PlantKind::kHeat) x[0] = x[n - 1] = 0.0;
      break;
    case PlantKind::kWave:
      for (std::size_t i = 1; i + 1 < n; ++i) {
        x[i] = init.field.eval(static_cast<double>(i) * h);
        x[n + i] = init.velocity.eval(static_cast<double>(i) * h);
      }
      break;
  }
  x[dp.y_index()] = init.y;
  dp.apply_constraints(0.0, x);
  return x;
}

Trajectory simulate(const Scenario& s, const DadsParams& p, const GainProfile& g) {
  require_valid(p);
  LoopLaw law{[&](double y, double z) { return control(y, z, p, g); },
              [&](double y, double z) { return update_rate(y, z, p); },
              "dads eps=" + format_double(p.epsilon) + " gamma=" + format_double(p.gamma) +
                  " kappa=" + format_double(p.kappa) + " a=" + format_double(p.a) + " C=" + format_double(p.c_decay)};
  return drive(s, effective_gain(s, p, g), law, std::nullopt);
}

Trajectory simulate_linear(const Scenario& s, double k) {
  LoopLaw law{[k](double y, double) { return -k * y; }, [](double, double) { return 0.0; },
              "linear k=" + format_double(k)};
  return drive(s, b_signal(s.plant).eval(0.0) * k, law, std::nullopt);
}

Trajectory simulate_open_loop(const Scenario& s, const std::optional<Signal>& prescribed_y) {
  LoopLaw law{[](double, double) { return 0.0; }, [](double, double) { return 0.0; },
              prescribed_y ? "open prescribed=" + prescribed_y->to_string() : std::string("open")};
  return drive(s, 0.0, law, prescribed_y);
}

}  // namespace dads
