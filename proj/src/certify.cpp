#include "dads/certify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dads/error.hpp"

namespace dads {

namespace {

// Index of the first sample with t >= t_min.
std::size_t first_index_at(const Trajectory& tr, double t_min) {
  const auto it = std::lower_bound(tr.t.begin(), tr.t.end(), t_min - 1e-12);
  return static_cast<std::size_t>(it - tr.t.begin());
}

void require_samples(const Trajectory& tr) {
  if (tr.size() == 0) throw ConfigError("trajectory has no samples");
}

double max_abs(const std::vector<double>& v, std::size_t from) {
  double m = 0.0;
  for (std::size_t i = from; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kInconclusive:
      return "inconclusive";
    case CheckStatus::kNotApplicable:
      return "not_applicable";
  }
  return "?";
}

std::string_view to_string(DichotomyClass c) {
  switch (c) {
    case DichotomyClass::kNotApplicable:
      return "not_applicable";
    case DichotomyClass::kRegulated:
      return "regulated";
    case DichotomyClass::kGainDeficient:
      return "gain_deficient";
    case DichotomyClass::kGainDeficientRegulated:
      return "gain_deficient_regulated";
    case DichotomyClass::kContradiction:
      return "contradiction";
  }
  return "?";
}

CheckRecord check_transient(const Trajectory& tr, const DadsParams& p, const CaseConstants& cc,
                            const InputNorms& norms, double rel_tol) {
  require_samples(tr);
  CheckRecord rec;
  rec.name = "transient";
  const double mu = mu_rate(p, cc);
  const double z = z_bound(p, cc, norms, tr.z.front());
  const double w0 = tr.w_norm.front();
  const double y0 = tr.y.front();
  const double start = 2.0 * cc.k2 * w0 * w0 + y0 * y0;
  const double floor = 2.0 * z / mu;
  rec.constants = {{"mu", mu}, {"Z", z}};
  rec.tolerance = rel_tol * (start + floor);
  rec.worst_slack = INFINITY;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double lhs = 2.0 * cc.k1 * tr.w_norm[i] * tr.w_norm[i] + tr.y[i] * tr.y[i];
    const double rhs = std::exp(-mu * tr.t[i]) * start + floor;
    if (rhs - lhs < rec.worst_slack) {
      rec.worst_slack = rhs - lhs;
      rec.worst_t = tr.t[i];
    }
  }
  rec.status = rec.worst_slack >= -rec.tolerance ? CheckStatus::kPass : CheckStatus::kFail;
  return rec;
}

CheckRecord check_z_window(const Trajectory& tr, const DadsParams& p, const CaseConstants& cc,
                           const InputNorms& norms, double tol) {
  require_samples(tr);
  CheckRecord rec;
  rec.name = "z_window";
  const double z0 = tr.z.front();
  const double w0 = tr.w_norm.front();
  const double upper = z_window_upper(p, cc, norms, w0 * w0, tr.y.front(), z0);
  rec.constants = {{"z_lower", z0}, {"z_upper", upper}, {"B", b_bound(p, cc, norms, w0 * w0, tr.y.front(), z0)}};
  rec.tolerance = tol;
  rec.worst_slack = INFINITY;
  bool monotone = true;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double slack = std::min(tr.z[i] - z0, upper - tr.z[i]);
    if (slack < rec.worst_slack) {
      rec.worst_slack = slack;
      rec.worst_t = tr.t[i];
    }
    if (i > 0 && tr.z[i] < tr.z[i - 1]) monotone = false;
  }
  if (!monotone) rec.note = "z decreased between samples";
  rec.status = rec.worst_slack >= -tol && monotone ? CheckStatus::kPass : CheckStatus::kFail;
  return rec;
}

CheckRecord check_tails(const Trajectory& tr, const DadsParams& p, const CaseConstants& cc,
                        const InputNorms& limits, const TailOptions& opt) {
  require_samples(tr);
  CheckRecord rec;
  rec.name = "tails";
  const double horizon = tr.t.back();
  const double base_y = tail_bound_y(p);
  const double tail_tol = (opt.y_factor - 1.0) * base_y;
  const double bound_w = tail_bound_w(p, cc, limits) + tail_tol;
  const double bound_y = base_y + tail_tol;
  const std::size_t from = first_index_at(tr, (1.0 - opt.window) * horizon);
  const double peak_y = max_abs(tr.y, from);
  const double peak_w = max_abs(tr.w_norm, from);
  const double settle = tr.z.back() - tr.z[first_index_at(tr, 0.8 * horizon)];

  rec.constants = {{"tail_y_bound", bound_y}, {"tail_w_bound", bound_w},   {"tail_y_max", peak_y},
                   {"tail_w_max", peak_w},    {"z_settle_drift", settle}};
  rec.tolerance = 0.0;
  const double slack_y = bound_y - peak_y;
  const double slack_w = bound_w - peak_w;
  rec.worst_slack = std::min(slack_y, slack_w);
  rec.worst_t = (1.0 - opt.window) * horizon;
  if (tr.aborted) {
    rec.status = CheckStatus::kInconclusive;
    rec.note = "trajectory aborted";
  } else if (!(std::abs(settle) < opt.settle_tol)) {
    rec.status = CheckStatus::kInconclusive;
    std::ostringstream os;
    os << "z has not settled: z(T) - z(0.8T) = " << settle;
    rec.note = os.str();
  } else {
    rec.status = rec.worst_slack >= 0.0 ? CheckStatus::kPass : CheckStatus::kFail;
  }
  return rec;
}

CheckRecord monitor_dissipation(const Trajectory& tr, const DadsParams& p, const CaseConstants& cc,
                                const InputNorms& norms, double tol) {
  require_samples(tr);
  CheckRecord rec;
  rec.name = "dissipation";
  const double mu = mu_rate(p, cc);
  const double z = z_bound(p, cc, norms, tr.z.front());
  rec.constants = {{"mu", mu}, {"Z", z}};
  rec.tolerance = tol;
  rec.worst_slack = tr.size() < 3 ? z : INFINITY;
  for (std::size_t i = 1; i + 1 < tr.size(); ++i) {
    const double e_prev = tr.phi[i - 1] + tr.v[i - 1];
    const double e_next = tr.phi[i + 1] + tr.v[i + 1];
    const double e = tr.phi[i] + tr.v[i];
    const double rate = (e_next - e_prev) / (tr.t[i + 1] - tr.t[i - 1]);
    const double slack = -mu * e + z - rate;
    if (slack < rec.worst_slack) {
      rec.worst_slack = slack;
      rec.worst_t = tr.t[i];
    }
  }
  rec.status = rec.worst_slack >= -tol ? CheckStatus::kPass : CheckStatus::kFail;
  return rec;
}

DichotomyRecord check_dichotomy(const Trajectory& tr, const DadsParams& p, const CaseConstants& cc,
                                const InputNorms& limits, double window, double reg_tol) {
  require_samples(tr);
  DichotomyRecord rec;
  rec.z_final = tr.z.back();
  rec.gain_level = p.kappa + std::exp(rec.z_final);
  rec.threshold = std::max(cc.r * limits.theta1, limits.theta2);
  const std::size_t from = first_index_at(tr, (1.0 - window) * tr.t.back());
  rec.tail_y = max_abs(tr.y, from);
  rec.tail_w = max_abs(tr.w_norm, from);

  // Contracting tail: the second half of the window peaks at most half as
  // high as the first half.
  const std::size_t mid = from + (tr.size() - from) / 2;
  auto shrinking = [&](const std::vector<double>& v) {
    double first = 0.0;
    for (std::size_t i = from; i < mid; ++i) first = std::max(first, std::abs(v[i]));
    return max_abs(v, mid) <= 0.5 * first;
  };
  auto small_or_shrinking = [&](const std::vector<double>& v) {
    return max_abs(v, from) <= reg_tol || shrinking(v);
  };
  rec.regulated = !tr.aborted && small_or_shrinking(tr.y) && small_or_shrinking(tr.w_norm);
  rec.gain_deficient = rec.gain_level < rec.threshold;
  if (limits.d != 0.0 || limits.delta != 0.0 || limits.b_inf < 1.0 / p.kappa) {
    // The observed facts are still recorded.
    rec.note = "requires vanishing d and delta and liminf b >= 1/kappa";
    return rec;
  }
  if (rec.regulated) {
    rec.classification =
        rec.gain_deficient ? DichotomyClass::kGainDeficientRegulated : DichotomyClass::kRegulated;
  } else {
    rec.classification = rec.gain_deficient ? DichotomyClass::kGainDeficient : DichotomyClass::kContradiction;
  }
  return rec;
}

double small_gain_threshold(double theta1, double theta2, double p_bar, double b_min) {
  if (!(p_bar > 0) || !(b_min > 0)) throw ConfigError("small-gain threshold needs p_bar > 0 and b_min > 0");
  return theta1 * theta2 / (p_bar * b_min);
}

std::array<double, 4> planar_linear_matrix(double theta1, double theta2, double p_bar, double b, double k) {
  return {-p_bar, theta1, theta2, -b * k};
}

bool is_hurwitz_2x2(const std::array<double, 4>& m) {
  const double trace = m[0] + m[3];
  const double det = m[0] * m[3] - m[1] * m[2];
  return trace < 0.0 && det > 0.0;
}

double spectral_abscissa_2x2(const std::array<double, 4>& m) {
  const double half_trace = 0.5 * (m[0] + m[3]);
  const double det = m[0] * m[3] - m[1] * m[2];
  const double disc = half_trace * half_trace - det;
  return disc >= 0.0 ? half_trace + std::sqrt(disc) : half_trace;
}

CheckRecord check_analytic_oracle(const Trajectory& tr, const Scenario& s, double rel_tol) {
  if (tr.snapshots.empty()) throw ConfigError("analytic oracle needs snapshots");
  const DiscretePlant dp(s.plant, s.phi, s.intervals);
  const std::size_t ny = dp.y_index();
  CheckRecord rec;
  rec.name = "analytic_oracle";
  double worst = 0.0;
  for (const Snapshot& snap : tr.snapshots) {
    const std::vector<double> exact = analytic_unstable(s.plant, snap.t, s.intervals);
    std::vector<double> diff(dp.state_size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = snap.state[i] - exact[i];
    const double num = std::hypot(dp.state_norm(diff), diff[ny]);
    const double den = std::hypot(dp.state_norm(exact), exact[ny]);
    const double err = num / den;
    if (err >= worst) {
      worst = err;
      rec.worst_t = snap.t;
    }
  }
  rec.worst_slack = rel_tol - worst;
  rec.tolerance = 0.0;
  rec.constants["bound"] = rel_tol;
  rec.constants["max_relative_error"] = worst;
  rec.status = worst <= rel_tol ? CheckStatus::kPass : CheckStatus::kFail;
  return rec;
}

CheckRecord check_delay_oracle(const Trajectory& tr, const Scenario& s, const Signal& y, double tol) {
  const auto* plant = std::get_if<TransportPlant>(&s.plant);
  if (plant == nullptr) throw ConfigError("delay oracle needs a transport plant");
  const DiscretePlant dp(s.plant, s.phi, s.intervals);
  const double h = dp.spacing();
  const double t_min = 1.0 / plant->c;
  CheckRecord rec;
  rec.name = "delay_oracle";
  double worst = 0.0;
  std::size_t compared = 0;
  for (const Snapshot& snap : tr.snapshots) {
    if (snap.t < t_min - 1e-12) continue;
    ++compared;
    for (std::size_t i = 0; i < dp.nodes(); ++i) {
      const double x = static_cast<double>(i) * h;
      const double err = std::abs(snap.state[i] - y.eval(snap.t - x / plant->c));
      if (err >= worst) {
        worst = err;
        rec.worst_t = snap.t;
      }
    }
  }
  if (compared == 0) throw ConfigError("delay oracle needs snapshots with t >= 1/c");
  rec.worst_slack = tol - worst;
  rec.tolerance = 0.0;
  rec.constants["bound"] = tol;
  rec.constants["max_abs_error"] = worst;
  rec.status = worst <= tol ? CheckStatus::kPass : CheckStatus::kFail;
  return rec;
}

bool CertReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed(); }) &&
         dichotomy.classification != DichotomyClass::kContradiction;
}

CertReport certify(const Trajectory& tr, const Scenario& s, const DadsParams& p, const CertOptions& opt) {
  CertReport rep;
  const CaseConstants cc = case_constants(s.plant);
  const InputNorms norms = input_norms(s.plant);
  const InputNorms limits = input_limits(s.plant);
  const double z0 = tr.z.front();
  const double w0 = tr.w_norm.front();
  rep.constants = {
      {"k1", cc.k1},
      {"k2", cc.k2},
      {"R", cc.r},
      {"G", cc.g_const},
      {"mu", mu_rate(p, cc)},
      {"Z", z_bound(p, cc, norms, z0)},
      {"Z_sum", z_sum(p, cc, norms, z0)},
      {"B", b_bound(p, cc, norms, w0 * w0, tr.y.front(), z0)},
      {"z_upper", z_window_upper(p, cc, norms, w0 * w0, tr.y.front(), z0)},
      {"tail_w_bound", tail_bound_w(p, cc, limits)},
      {"tail_y_bound", tail_bound_y(p)},
      {"g_theta2", g_excess(norms.theta2, z0, p)},
      {"g_inv_b", g_excess(1.0 / norms.b_inf, z0, p)},
      {"g_theta1", g_excess(cc.r * norms.theta1, z0, p)},
  };
  if (opt.transient) rep.checks.push_back(check_transient(tr, p, cc, norms));
  if (opt.z_window) rep.checks.push_back(check_z_window(tr, p, cc, norms));
  if (opt.tails) rep.checks.push_back(check_tails(tr, p, cc, limits, opt.tail));
  if (opt.dissipation) {
    // Spatial discretization perturbs the continuum inequality by O(h^2)
    // (central schemes) or O(h) (upwind), relative to the energy level.
    double energy = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) energy = std::max(energy, tr.phi[i] + tr.v[i]);
    double scale = 0.0;
    if (tr.kind != PlantKind::kPlanar) {
      const double h = 1.0 / static_cast<double>(tr.intervals);
      scale = tr.kind == PlantKind::kTransport ? h : h * h;
    }
    rep.checks.push_back(monitor_dissipation(tr, p, cc, norms, opt.monitor_tol + scale * energy));
  }
  if (opt.dichotomy) rep.dichotomy = check_dichotomy(tr, p, cc, limits, opt.tail.window);
  return rep;
}

}  // namespace dads
