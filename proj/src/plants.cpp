#include "dads/plants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dads/error.hpp"
#include "dads/operators.hpp"

namespace dads {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double require_constant(const Signal& s, const char* role) {
  if (!s.is_constant()) {
    throw ConfigError(std::string("analytic instance needs a constant ") + role + " signal");
  }
  return s.eval(0.0);
}

}  // namespace

std::string_view to_string(PlantKind kind) {
  switch (kind) {
    case PlantKind::kPlanar:
      return "planar";
    case PlantKind::kHeat:
      return "heat";
    case PlantKind::kTransport:
      return "transport";
    case PlantKind::kWave:
      return "wave";
  }
  return "?";
}

PlantKind parse_plant_kind(std::string_view text) {
  if (text == "planar") return PlantKind::kPlanar;
  if (text == "heat") return PlantKind::kHeat;
  if (text == "transport") return PlantKind::kTransport;
  if (text == "wave") return PlantKind::kWave;
  throw ConfigError("unknown plant kind '" + std::string(text) + "'");
}

Coupling Coupling::zero() { return Coupling{}; }

Coupling Coupling::bounded_integral(Profile load_kernel, double k_gain, double phi_weight) {
  if (load_kernel.l2_norm() > 1.0 + 1e-12) throw ConfigError("bounded_integral kernel must have L2 norm <= 1");
  if (std::abs(k_gain) > 1.0) throw ConfigError("bounded_integral k_gain must satisfy |k_gain| <= 1");
  if (std::abs(phi_weight) > 1.0) throw ConfigError("bounded_integral phi_weight must satisfy |phi_weight| <= 1");
  Coupling c;
  c.kind_ = Kind::kBoundedIntegral;
  c.kernel_ = Profile::polynomial({k_gain});
  c.load_ = std::move(load_kernel);
  c.boundary_gain_ = k_gain;
  c.phi_weight_ = phi_weight;
  return c;
}

Coupling Coupling::heat_unstable(double p_bar) {
  if (!(p_bar > 0)) throw ConfigError("heat_unstable needs p_bar > 0");
  Coupling c;
  c.kind_ = Kind::kHeatUnstable;
  const double s = 1.0 / (1.0 + 2.0 * p_bar);
  c.kernel_ = Profile::polynomial({-2.0 * p_bar * s, -s, s});
  c.load_ = Profile::polynomial({-1.0});
  return c;
}

Coupling Coupling::transport_unstable(double c_speed, double theta_product) {
  if (!(c_speed > 0)) throw ConfigError("transport_unstable needs c > 0");
  if (!(theta_product >= 2.0 * (1.0 + c_speed))) {
    throw ConfigError("transport_unstable needs theta11*theta2 >= 2(1+c)");
  }
  Coupling c;
  c.kind_ = Kind::kTransportUnstable;
  c.kernel_ = Profile::polynomial({2.0 * c_speed / theta_product, 2.0 / theta_product});
  c.load_ = Profile::polynomial({1.0});
  return c;
}

Coupling Coupling::transport_delay() {
  Coupling c;
  c.kind_ = Kind::kTransportDelay;
  c.boundary_gain_ = 1.0;
  c.load_ = Profile::polynomial({1.0});
  return c;
}

Coupling Coupling::wave_unstable() {
  Coupling c;
  c.kind_ = Kind::kWaveUnstable;
  c.kernel_ = Profile::sine(1);
  c.load_ = Profile::sine(1);
  return c;
}

std::string Coupling::name() const {
  switch (kind_) {
    case Kind::kZero:
      return "zero";
    case Kind::kBoundedIntegral:
      return "bounded_integral";
    case Kind::kHeatUnstable:
      return "heat_unstable";
    case Kind::kTransportUnstable:
      return "transport_unstable";
    case Kind::kTransportDelay:
      return "transport_delay";
    case Kind::kWaveUnstable:
      return "wave_unstable";
  }
  return "?";
}

bool Coupling::supports(PlantKind plant) const {
  switch (kind_) {
    case Kind::kZero:
    case Kind::kBoundedIntegral:
      return plant != PlantKind::kPlanar;
    case Kind::kHeatUnstable:
      return plant == PlantKind::kHeat;
    case Kind::kTransportUnstable:
    case Kind::kTransportDelay:
      return plant == PlantKind::kTransport;
    case Kind::kWaveUnstable:
      return plant == PlantKind::kWave;
  }
  return false;
}

double Coupling::L(std::span<const double> w, double h, double y, const PhiSpec& phi) const {
  double acc = 0.5 * (load_.eval(0.0) * w.front() + load_.eval(1.0) * w.back());
  for (std::size_t i = 1; i + 1 < w.size(); ++i) acc += load_.eval(static_cast<double>(i) * h) * w[i];
  acc *= h;
  if (phi_weight_ != 0.0) acc += phi_weight_ * phi(y) * y;
  return acc;
}

PlantKind kind_of(const Plant& plant) { return static_cast<PlantKind>(plant.index()); }

const Signal& b_signal(const Plant& plant) {
  return std::visit([](const auto& p) -> const Signal& { return p.b; }, plant);
}

const Signal& d_signal(const Plant& plant) {
  return std::visit([](const auto& p) -> const Signal& { return p.d; }, plant);
}

void validate_plant(const Plant& plant) {
  const PlantKind kind = kind_of(plant);
  std::visit(Overloaded{
                 [](const PlanarPlant& p) {
                   if (!(p.p_bar > 0)) throw ConfigError("p_bar must be positive");
                 },
                 [&](const HeatPlant& p) {
                   if (!(p.p_bar > 0)) throw ConfigError("p_bar must be positive");
                   if (!p.coupling.supports(kind)) throw ConfigError("coupling " + p.coupling.name() + " cannot be used with a heat plant");
                 },
                 [&](const TransportPlant& p) {
                   if (!(p.c > 0)) throw ConfigError("transport speed c must be positive");
                   if (!p.coupling.supports(kind)) throw ConfigError("coupling " + p.coupling.name() + " cannot be used with a transport plant");
                 },
                 [&](const WavePlant& p) {
                   if (!(p.c > 0)) throw ConfigError("wave speed c must be positive");
                   if (!(p.sigma > 0)) throw ConfigError("damping sigma must be positive");
                   if (!p.coupling.supports(kind)) throw ConfigError("coupling " + p.coupling.name() + " cannot be used with a wave plant");
                 },
             },
             plant);
  const Signal& b = b_signal(plant);
  if (!b.has_positive_floor()) {
    throw ConfigError("b signal must be wrapped in floor_clamp(_, m) with m > 0");
  }
  if (!(b.infimum() > 0)) throw ConfigError("b signal must have a positive infimum");
}

DiscretePlant::DiscretePlant(Plant plant, PhiSpec phi, std::size_t intervals)
    : plant_(std::move(plant)), kind_(kind_of(plant_)), phi_(phi), intervals_(intervals) {
  validate_plant(plant_);
  if (kind_ == PlantKind::kPlanar) {
    intervals_ = 0;
    h_ = 0.0;
    return;
  }
  if (intervals_ < Field::kMinIntervals) {
    throw ConfigError("grid needs at least " + std::to_string(Field::kMinIntervals) + " intervals");
  }
  h_ = 1.0 / static_cast<double>(intervals_);
  const std::size_t n = nodes();
  x_.resize(n);
  kernel_.resize(n);
  load_.resize(n);
  theta_profile_.resize(n);
  delta_profile_.resize(n);
  scratch_.resize(n);
  scratch2_.resize(n);

  const Coupling* coupling = nullptr;
  const Profile* theta = nullptr;
  const Profile* delta = nullptr;
  std::visit(Overloaded{
                 [](const PlanarPlant&) {},
                 [&](const HeatPlant& p) {
                   coupling = &p.coupling;
                   theta = &p.theta1.space;
                   delta = &p.delta.space;
                 },
                 [&](const TransportPlant& p) {
                   coupling = &p.coupling;
                   theta = &p.theta11.space;
                   delta = &p.delta.space;
                 },
                 [&](const WavePlant& p) {
                   coupling = &p.coupling;
                   theta = &p.theta1.space;
                   delta = &p.delta.space;
                 },
             },
             plant_);
  for (std::size_t i = 0; i < n; ++i) {
    x_[i] = static_cast<double>(i) * h_;
    kernel_[i] = coupling->kernel(x_[i]);
    load_[i] = coupling->load_weight(x_[i]);
    theta_profile_[i] = theta->eval(x_[i]);
    delta_profile_[i] = delta->eval(x_[i]);
  }
}

std::size_t DiscretePlant::state_size() const {
  switch (kind_) {
    case PlantKind::kPlanar:
      return 2;
    case PlantKind::kHeat:
    case PlantKind::kTransport:
      return nodes() + 1;
    case PlantKind::kWave:
      return 2 * nodes() + 1;
  }
  return 0;
}

double DiscretePlant::inflow_value(double t, double y) const {
  const auto& p = std::get<TransportPlant>(plant_);
  return p.theta12.eval(t) * p.coupling.K2(y);
}

void DiscretePlant::derivative(double t, std::span<const double> x, double u, std::span<double> dxdt) {
  const std::size_t n = nodes();
  const double y = x[y_index()];

  // L evaluated with the precomputed load weights.
  auto load_of = [&](std::span<const double> w, const Coupling& c) {
    double acc = trapezoid_product(load_, w, h_);
    if (c.phi_weight() != 0.0) acc += c.phi_weight() * phi_(y) * y;
    return acc;
  };

  switch (kind_) {
    case PlantKind::kPlanar: {
      const auto& p = std::get<PlanarPlant>(plant_);
      const double w = x[0];
      dxdt[0] = -p.p_bar * w + p.theta1.eval(t) * y;
      dxdt[1] = p.theta2.eval(t) * w + p.b.eval(t) * u + p.d.eval(t);
      return;
    }
    case PlantKind::kHeat: {
      const auto& p = std::get<HeatPlant>(plant_);
      const auto w = x.subspan(0, n);
      auto wdot = dxdt.subspan(0, n);
      laplacian_dirichlet(w, h_, wdot);
      const double th = p.theta1.time.eval(t);
      const double dl = p.delta.time.eval(t);
      for (std::size_t i = 1; i + 1 < n; ++i) {
        wdot[i] = p.p_bar * wdot[i] + th * theta_profile_[i] * kernel_[i] * y + dl * delta_profile_[i];
      }
      wdot[0] = 0.0;
      wdot[n - 1] = 0.0;
      dxdt[n] = p.b.eval(t) * u + p.theta2.eval(t) * load_of(w, p.coupling) + p.d.eval(t);
      return;
    }
    case PlantKind::kTransport: {
      const auto& p = std::get<TransportPlant>(plant_);
      std::copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n), scratch_.begin());
      scratch_[0] = inflow_value(t, y);
      auto wdot = dxdt.subspan(0, n);
      upwind_dx(scratch_, h_, wdot);
      const double th = p.theta11.time.eval(t);
      const double dl = p.delta.time.eval(t);
      for (std::size_t i = 1; i < n; ++i) {
        wdot[i] = -p.c * wdot[i] + th * theta_profile_[i] * kernel_[i] * y + dl * delta_profile_[i];
      }
      wdot[0] = 0.0;
      dxdt[n] = p.b.eval(t) * u + p.theta2.eval(t) * load_of(scratch_, p.coupling) + p.d.eval(t);
      return;
    }
    case PlantKind::kWave: {
      const auto& p = std::get<WavePlant>(plant_);
      const auto v = x.subspan(0, n);
      const auto phi = x.subspan(n, n);
      auto vdot = dxdt.subspan(0, n);
      auto phidot = dxdt.subspan(n, n);
      laplacian_dirichlet(v, h_, phidot);
      const double c2 = p.c * p.c;
      const double th = p.theta1.time.eval(t);
      const double dl = p.delta.time.eval(t);
      for (std::size_t i = 1; i + 1 < n; ++i) {
        vdot[i] = phi[i];
        phidot[i] = c2 * phidot[i] - p.sigma * phi[i] + th * theta_profile_[i] * kernel_[i] * y +
                    dl * delta_profile_[i];
      }
      vdot[0] = vdot[n - 1] = 0.0;
      phidot[0] = phidot[n - 1] = 0.0;
      dxdt[2 * n] = p.b.eval(t) * u + p.theta2.eval(t) * load_of(v, p.coupling) + p.d.eval(t);
      return;
    }
  }
}

void DiscretePlant::apply_constraints(double t, std::span<double> x) const {
  if (kind_ == PlantKind::kTransport) x[0] = inflow_value(t, x[y_index()]);
}

double DiscretePlant::state_norm(std::span<const double> x) const {
  const std::size_t n = nodes();
  switch (kind_) {
    case PlantKind::kPlanar:
      return std::abs(x[0]);
    case PlantKind::kHeat:
    case PlantKind::kTransport:
      return std::sqrt(l2_norm_sq(x.subspan(0, n), h_));
    case PlantKind::kWave:
      return std::sqrt(gradient_norm_sq(x.subspan(0, n), h_) + l2_norm_sq(x.subspan(n, n), h_));
  }
  return 0.0;
}

PlanarState planar_rhs(const PlanarState& s, double t, double u, const PlanarPlant& plant) {
  DiscretePlant dp(plant, PhiSpec::zero(), 0);
  const std::vector<double> x{s.w, s.y};
  std::vector<double> dx(2);
  dp.derivative(t, x, u, dx);
  return {dx[0], dx[1]};
}

namespace {

FieldState field_rhs(const FieldState& s, double t, double u, Plant plant, const PhiSpec& phi,
                     Boundary out_bc) {
  DiscretePlant dp(std::move(plant), phi, s.w.intervals());
  std::vector<double> x(s.w.values().begin(), s.w.values().end());
  x.push_back(s.y);
  std::vector<double> dx(x.size());
  dp.derivative(t, x, u, dx);
  const double ydot = dx.back();
  dx.pop_back();
  return {Field(std::move(dx), out_bc), ydot};
}

}  // namespace

FieldState heat_rhs(const FieldState& s, double t, double u, const HeatPlant& plant, const PhiSpec& phi) {
  if (s.w.boundary() != Boundary::kDirichletBoth) throw ConfigError("heat state must be dirichlet-both");
  return field_rhs(s, t, u, plant, phi, Boundary::kDirichletBoth);
}

FieldState transport_rhs(const FieldState& s, double t, double u, const TransportPlant& plant,
                         const PhiSpec& phi) {
  if (s.w.boundary() != Boundary::kInflowLeft) throw ConfigError("transport state must be inflow-left");
  return field_rhs(s, t, u, plant, phi, Boundary::kFree);
}

WaveState wave_rhs(const WaveState& s, double t, double u, const WavePlant& plant, const PhiSpec& phi) {
  if (s.v.boundary() != Boundary::kDirichletBoth || s.phi.boundary() != Boundary::kDirichletBoth) {
    throw ConfigError("wave state must be dirichlet-both");
  }
  if (s.v.intervals() != s.phi.intervals()) throw ConfigError("wave fields must share a grid");
  DiscretePlant dp(plant, phi, s.v.intervals());
  const std::size_t n = s.v.size();
  std::vector<double> x;
  x.reserve(2 * n + 1);
  x.insert(x.end(), s.v.values().begin(), s.v.values().end());
  x.insert(x.end(), s.phi.values().begin(), s.phi.values().end());
  x.push_back(s.y);
  std::vector<double> dx(x.size());
  dp.derivative(t, x, u, dx);
  std::vector<double> vdot(dx.begin(), dx.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<double> phidot(dx.begin() + static_cast<std::ptrdiff_t>(n), dx.begin() + static_cast<std::ptrdiff_t>(2 * n));
  return {Field(std::move(vdot), Boundary::kDirichletBoth), Field(std::move(phidot), Boundary::kDirichletBoth),
          dx.back()};
}

std::vector<double> random_smooth_field(std::mt19937_64& rng, std::size_t intervals, bool dirichlet) {
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::array<double, 6> amps{};
  for (auto& a : amps) a = 4.0 * sym(rng);
  const double offset = dirichlet ? 0.0 : 4.0 * sym(rng);
  const double slope = dirichlet ? 0.0 : 4.0 * sym(rng);
  const double h = 1.0 / static_cast<double>(intervals);
  std::vector<double> f(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double x = static_cast<double>(i) * h;
    double v = offset + slope * x;
    for (std::size_t k = 0; k < amps.size(); ++k) v += amps[k] * std::sin(static_cast<double>(k + 1) * kPi * x);
    f[i] = v;
  }
  if (dirichlet) f.front() = f.back() = 0.0;
  return f;
}

BoundCheckResult bound_check(const Coupling& coupling, PlantKind kind, std::size_t samples,
                             const PhiSpec& phi, std::uint64_t seed) {
  BoundCheckResult result;
  if (kind == PlantKind::kPlanar) {
    // The planar load is L(w, y) = w, which meets |L| <= |w| with equality.
    return result;
  }
  constexpr std::size_t kGrid = 64;
  constexpr double kTol = 1e-12;
  const double h = 1.0 / kGrid;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);

  auto report = [&](const std::string& what, double lhs, double rhs) {
    const double ratio = rhs > 0 ? lhs / rhs : (lhs > kTol ? INFINITY : 0.0);
    result.worst_ratio = std::max(result.worst_ratio, ratio);
    if (lhs > rhs * (1.0 + 1e-9) + kTol && result.ok) {
      result.ok = false;
      result.first_violation = what;
    }
  };

  const bool dirichlet = kind != PlantKind::kTransport;
  std::vector<double> w, phi_field;
  for (std::size_t s = 0; s < samples; ++s) {
    const double y = 20.0 * sym(rng);
    const double x = unit(rng);
    {
      std::ostringstream what;
      what << "|K(" << x << ", " << y << ")| <= |y|";
      report(what.str(), std::abs(coupling.K(x, y)), std::abs(y));
    }
    if (kind == PlantKind::kTransport) {
      std::ostringstream what;
      what << "|K2(" << y << ")| <= |y|";
      report(what.str(), std::abs(coupling.K2(y)), std::abs(y));
    }
    w = random_smooth_field(rng, kGrid, dirichlet);
    double state_norm = 0.0;
    if (kind == PlantKind::kWave) {
      phi_field = random_smooth_field(rng, kGrid, dirichlet);
      state_norm = std::sqrt(gradient_norm_sq(w, h) + l2_norm_sq(phi_field, h));
    } else {
      state_norm = std::sqrt(l2_norm_sq(w, h));
    }
    std::ostringstream what;
    what << "|L(w, " << y << ")| <= ||w|| + phi(y)|y| (sample " << s << ")";
    report(what.str(), std::abs(coupling.L(w, h, y, phi)), state_norm + phi(y) * std::abs(y));
  }
  return result;
}

std::vector<double> analytic_unstable(const Plant& plant, double t, std::size_t intervals) {
  const double growth = std::exp(t);
  return std::visit(
      Overloaded{
          [](const PlanarPlant&) -> std::vector<double> {
            throw ConfigError("the planar plant has no analytic unstable instance");
          },
          [&](const HeatPlant& p) {
            if (p.coupling.kind() != Coupling::Kind::kHeatUnstable) {
              throw ConfigError("analytic heat instance needs the heat_unstable coupling");
            }
            const double theta2 = require_constant(p.theta2, "theta2");
            const Field w = Field::sample(intervals, Boundary::kDirichletBoth,
                                          [&](double x) { return growth * x * (x - 1.0); });
            std::vector<double> out(w.values().begin(), w.values().end());
            out.push_back(theta2 / 6.0 * growth);
            return out;
          },
          [&](const TransportPlant& p) {
            if (p.coupling.kind() != Coupling::Kind::kTransportUnstable) {
              throw ConfigError("analytic transport instance needs the transport_unstable coupling");
            }
            const double theta2 = require_constant(p.theta2, "theta2");
            const Field w = Field::sample(intervals, Boundary::kInflowLeft, [&](double x) { return growth * x; });
            std::vector<double> out(w.values().begin(), w.values().end());
            out.push_back(theta2 / 2.0 * growth);
            return out;
          },
          [&](const WavePlant& p) {
            if (p.coupling.kind() != Coupling::Kind::kWaveUnstable) {
              throw ConfigError("analytic wave instance needs the wave_unstable coupling");
            }
            if (p.c != 1.0) throw ConfigError("analytic wave instance needs c = 1");
            const double theta1 = require_constant(p.theta1.time, "theta1") * p.theta1.space.eval(0.5);
            const Field v = Field::sample(intervals, Boundary::kDirichletBoth,
                                          [&](double x) { return growth * std::sin(kPi * x); });
            std::vector<double> out(v.values().begin(), v.values().end());
            out.insert(out.end(), v.values().begin(), v.values().end());
            out.push_back((1.0 + p.sigma + kPi * kPi) / theta1 * growth);
            return out;
          },
      },
      plant);
}

}  // namespace dads
