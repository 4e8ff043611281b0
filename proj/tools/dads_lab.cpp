// dads_lab: batch front end for scenario configurations.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "dads/certify.hpp"
#include "dads/config.hpp"
#include "dads/error.hpp"
#include "dads/output.hpp"
#include "dads/runner.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

int config_error(const dads::ConfigError& e, const std::string& path) {
  if (e.line() > 0) {
    std::fprintf(stderr, "%s:%d: error: %s\n", path.c_str(), e.line(), e.message().c_str());
  } else {
    std::fprintf(stderr, "%s: error: %s\n", path.c_str(), e.what());
  }
  return kExitConfig;
}

void print_checks(const dads::RunResult& res) {
  for (const auto& c : res.report.checks) {
    std::printf("  %-18s %-13s slack %+.6e  (tol %.3e, worst t %.6g)\n", c.name.c_str(),
                std::string(dads::to_string(c.status)).c_str(), c.worst_slack, c.tolerance, c.worst_t);
    if (!c.note.empty()) std::printf("    note: %s\n", c.note.c_str());
  }
}

int cmd_run(const std::string& path, const std::string& out, const dads::RunOverrides& ov) {
  dads::ScenarioConfig cfg;
  try {
    cfg = dads::load_config(path);
  } catch (const dads::ConfigError& e) {
    return config_error(e, path);
  }
  dads::RunResult res;
  try {
    res = dads::run_config(cfg, ov);
    const auto files = dads::write_run_outputs(out, cfg, res);
    std::printf("%s: %s, %zu samples, dt %.6g\n", path.c_str(), std::string(dads::to_string(cfg.mode)).c_str(),
                res.trajectory.size(), res.trajectory.dt);
    if (res.trajectory.aborted) std::printf("  aborted: %s\n", res.trajectory.abort_reason.c_str());
    const auto& tr = res.trajectory;
    if (tr.size() > 0) {
      std::printf("  final t %.6g  y %.6e  z %.6f  ||w|| %.6e\n", tr.t.back(), tr.y.back(), tr.z.back(),
                  tr.w_norm.back());
    }
    print_checks(res);
    if (cfg.mode == dads::RunMode::kClosedLoop && cfg.checks.dichotomy) {
      std::printf("  dichotomy: %s\n", std::string(dads::to_string(res.report.dichotomy.classification)).c_str());
    }
    std::printf("  wrote %zu files to %s\n", files.size(), out.c_str());
  } catch (const dads::ConfigError& e) {
    return config_error(e, path);
  } catch (const dads::NumericalError& e) {
    std::fprintf(stderr, "%s: numerical failure: %s\n", path.c_str(), e.what());
    return kExitFail;
  }
  const bool ok = res.passed();
  std::printf("%s\n", ok ? "PASS" : "FAIL");
  return ok ? kExitPass : kExitFail;
}

int cmd_gains(const std::string& path) {
  dads::ScenarioConfig cfg;
  try {
    cfg = dads::load_config(path);
  } catch (const dads::ConfigError& e) {
    return config_error(e, path);
  }
  const auto& p = cfg.params;
  std::printf("kappa %.6g  a %.6g  C %.6g  eps %.6g  Gamma %.6g  gains %s (safety %.6g)\n", p.kappa, p.a,
              p.c_decay, p.epsilon, p.gamma, cfg.gain_mode.c_str(), cfg.safety_factor);
  std::printf("%10s | %14s %14s %14s | %14s %14s %14s | %12s %12s %12s\n", "y", "min P1", "min P2", "min P3",
              "P1", "P2", "P3", "slack1", "slack2", "slack3");
  const auto row = [&](double y) {
    const dads::GainTriple lo = dads::min_gain_bounds(p, cfg.phi, y);
    const dads::GainTriple g = cfg.gains.at(y);
    std::printf("%10.4g | %14.10g %14.10g %14.10g | %14.10g %14.10g %14.10g | %12.4e %12.4e %12.4e\n", y, lo.p1,
                lo.p2, lo.p3, g.p1, g.p2, g.p3, g.p1 - lo.p1, g.p2 - lo.p2, g.p3 - lo.p3);
  };
  if (cfg.phi.is_zero()) {
    row(0.0);
  } else {
    for (double y : dads::linspace(0.0, 5.0, 11)) row(y);
  }
  const auto check = dads::verify_gains(cfg.gains, p, cfg.phi, dads::linspace(-10.0, 10.0, 10001));
  std::printf("inequalities on y in [-10, 10]: %s (min relative slack %.6e)\n", check.ok ? "satisfied" : "violated",
              check.min_relative_slack);
  return check.ok ? kExitPass : kExitFail;
}

int cmd_compare(const std::string& path) {
  dads::ScenarioConfig cfg;
  try {
    cfg = dads::load_config(path);
  } catch (const dads::ConfigError& e) {
    return config_error(e, path);
  }
  const auto* planar = std::get_if<dads::PlanarPlant>(&cfg.scenario.plant);
  if (planar == nullptr) {
    std::fprintf(stderr, "%s: error: compare needs a planar plant\n", path.c_str());
    return kExitConfig;
  }
  const double theta1 = planar->theta1.sup_norm();
  const double theta2 = planar->theta2.sup_norm();
  const double b_min = planar->b.infimum();
  const double threshold = dads::small_gain_threshold(theta1, theta2, planar->p_bar, b_min);
  const double k = threshold > 0 ? 1.001 * threshold : 1.0;
  std::printf("small-gain threshold theta1 theta2 / (p b_min) = %.10g\n", threshold);
  if (threshold == 0) std::printf("zero interconnection: any k > 0 satisfies the small-gain condition\n");

  try {
    const dads::Trajectory lin = dads::simulate_linear(cfg.scenario, k);
    const dads::Trajectory ad = dads::simulate(cfg.scenario, cfg.params, cfg.gains);
    const auto peak = [](const dads::Trajectory& tr) {
      double m = 0.0;
      for (double u : tr.u) m = std::max(m, std::abs(u));
      return m;
    };
    std::printf("%-22s %14s %14s %14s %14s\n", "law", "final |w|", "final |y|", "peak |u|", "z(T)");
    char label[64];
    std::snprintf(label, sizeof label, "linear k=%.6g", k);
    std::printf("%-22s %14.6e %14.6e %14.6e %14s\n", label, lin.w_norm.back(), std::abs(lin.y.back()), peak(lin),
                "-");
    std::printf("%-22s %14.6e %14.6e %14.6e %14.6f\n", "DADS", ad.w_norm.back(), std::abs(ad.y.back()), peak(ad),
                ad.z.back());
    if (lin.aborted || ad.aborted) {
      std::printf("a run aborted: %s\n", (lin.aborted ? lin.abort_reason : ad.abort_reason).c_str());
      return kExitFail;
    }
  } catch (const dads::ConfigError& e) {
    return config_error(e, path);
  } catch (const dads::NumericalError& e) {
    std::fprintf(stderr, "%s: numerical failure: %s\n", path.c_str(), e.what());
    return kExitFail;
  }
  return kExitPass;
}

int cmd_validate(const std::string& path) {
  try {
    const dads::ScenarioConfig cfg = dads::load_config(path);
    std::printf("%s: ok (%s, %s)\n", path.c_str(), std::string(dads::to_string(cfg.mode)).c_str(),
                dads::describe(cfg.scenario).c_str());
  } catch (const dads::ConfigError& e) {
    return config_error(e, path);
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dads_lab: simulate and certify adaptive regulation scenarios"};
  app.require_subcommand(1);

  std::string config, out;
  dads::RunOverrides ov;
  double dt = 0, horizon = 0;

  auto* run = app.add_subcommand("run", "simulate a scenario, write CSV/SVG/JSON and certify it");
  run->add_option("--config", config, "scenario file")->required();
  run->add_option("--out", out, "output directory")->required();
  auto* dt_opt = run->add_option("--dt", dt, "time step cap");
  auto* horizon_opt = run->add_option("--horizon", horizon, "simulation horizon");

  auto* gains = app.add_subcommand("gains", "print the minimal gain bounds and the chosen gains");
  gains->add_option("--config", config, "scenario file")->required();
  auto* compare = app.add_subcommand("compare", "linear small-gain feedback versus DADS (planar only)");
  compare->add_option("--config", config, "scenario file")->required();
  auto* validate = app.add_subcommand("validate", "parse and validate a scenario file");
  validate->add_option("--config", config, "scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*run) {
    if (*dt_opt) ov.dt = dt;
    if (*horizon_opt) ov.horizon = horizon;
    return cmd_run(config, out, ov);
  }
  if (*gains) return cmd_gains(config);
  if (*compare) return cmd_compare(config);
  return cmd_validate(config);
}
