#include "dads/runner.hpp"

#include "dads/error.hpp"

namespace dads {

RunResult run_config(const ScenarioConfig& cfg_in, const RunOverrides& ov) {
  ScenarioConfig cfg = cfg_in;
  Scenario& s = cfg.scenario;
  if (ov.dt) {
    if (!(*ov.dt > 0)) throw ConfigError("--dt must be positive");
    s.dt = *ov.dt;
  }
  if (ov.horizon) {
    if (!(*ov.horizon > 0)) throw ConfigError("--horizon must be positive");
    s.horizon = *ov.horizon;
  }
  if ((cfg.oracle || cfg.delay_oracle) && s.snapshot_stride == 0) s.snapshot_stride = s.stride;

  RunResult res;
  switch (cfg.mode) {
    case RunMode::kClosedLoop:
      res.trajectory = simulate(s, cfg.params, cfg.gains);
      res.report = certify(res.trajectory, s, cfg.params, cfg.checks);
      break;
    case RunMode::kOpenLoop:
      res.trajectory = simulate_open_loop(s, cfg.prescribed_y);
      break;
    case RunMode::kLinear:
      res.trajectory = simulate_linear(s, cfg.linear_k);
      break;
  }
  res.effective_dt = res.trajectory.dt;
  if (cfg.oracle) res.report.checks.push_back(check_analytic_oracle(res.trajectory, s, cfg.oracle_tol));
  if (cfg.delay_oracle) {
    const double tol = cfg.delay_tol > 0 ? cfg.delay_tol : 1.0 / static_cast<double>(s.intervals);
    res.report.checks.push_back(check_delay_oracle(res.trajectory, s, *cfg.prescribed_y, tol));
  }
  return res;
}

}  // namespace dads
