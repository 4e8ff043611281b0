#pragma once

// Run artifacts: trajectory CSV, SVG plots and a JSON report.

#include <filesystem>
#include <string>
#include <vector>

#include "dads/config.hpp"
#include "dads/runner.hpp"

namespace dads {

/// Header `t,y,z,u,w_norm,Phi,V`, one row per recorded sample, LF endings.
/// Values use the shortest round-trip representation.
std::string trajectory_csv(const Trajectory& tr);

struct Series {
  std::string label;
  std::vector<double> values;
};

/// Line plot of `series` against `t` with labelled axes.
std::string svg_plot(const std::string& title, const std::string& y_label, const std::vector<double>& t,
                     const std::vector<Series>& series);

/// Report document: configuration summary, constants, checks and dichotomy.
std::string report_json(const ScenarioConfig& cfg, const RunResult& res);

/// Writes the CSV, the four plots and report.json into `dir`, creating it
/// when needed. Returns the paths.
std::vector<std::filesystem::path> write_run_outputs(const std::filesystem::path& dir, const ScenarioConfig& cfg,
                                                     const RunResult& res);

}  // namespace dads
