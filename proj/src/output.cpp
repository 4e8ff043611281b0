#include "dads/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dads/error.hpp"
#include "term_parser.hpp"

namespace dads {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string tick(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Non-finite values are not valid JSON numbers.
ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

}  // namespace

std::string trajectory_csv(const Trajectory& tr) {
  std::string out = "t,y,z,u,w_norm,Phi,V\n";
  for (std::size_t i = 0; i < tr.size(); ++i) {
    for (const auto* col : {&tr.t, &tr.y, &tr.z, &tr.u, &tr.w_norm, &tr.phi, &tr.v}) {
      if (col != &tr.t) out += ',';
      out += detail::format_double((*col)[i]);
    }
    out += '\n';
  }
  return out;
}

std::string svg_plot(const std::string& title, const std::string& y_label, const std::vector<double>& t,
                     const std::vector<Series>& series) {
  constexpr double kWidth = 720, kHeight = 420;
  constexpr double kLeft = 80, kRight = 20, kTop = 40, kBottom = 60;
  constexpr double kPlotW = kWidth - kLeft - kRight, kPlotH = kHeight - kTop - kBottom;
  static const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  double t0 = t.empty() ? 0.0 : t.front();
  double t1 = t.empty() ? 1.0 : t.back();
  if (!(t1 > t0)) t1 = t0 + 1.0;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& s : series) {
    for (double v : s.values) {
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (!(hi > lo)) {
    const double pad = std::max(std::abs(lo) * 0.05, 1e-12);
    lo -= pad;
    hi += pad;
  }
  const auto px = [&](double v) { return kLeft + (v - t0) / (t1 - t0) * kPlotW; };
  const auto py = [&](double v) { return kTop + (hi - v) / (hi - lo) * kPlotH; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"16\">" << xml_escape(title) << "</text>\n";
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + kPlotH << "\" x2=\"" << kLeft + kPlotW << "\" y2=\""
      << kTop + kPlotH << "\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + kPlotH
      << "\"/>\n";
  svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double f = static_cast<double>(i) / kTicks;
    const double tv = t0 + f * (t1 - t0);
    const double yv = lo + f * (hi - lo);
    svg << "<line x1=\"" << fixed(px(tv)) << "\" y1=\"" << kTop + kPlotH << "\" x2=\"" << fixed(px(tv))
        << "\" y2=\"" << kTop + kPlotH + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fixed(px(tv)) << "\" y=\"" << kTop + kPlotH + 18 << "\" text-anchor=\"middle\">"
        << tick(tv) << "</text>\n";
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fixed(py(yv)) << "\" x2=\"" << kLeft << "\" y2=\""
        << fixed(py(yv)) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << fixed(py(yv) + 4) << "\" text-anchor=\"end\">" << tick(yv)
        << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + kPlotW / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">t</text>\n";
  svg << "<text x=\"18\" y=\"" << kTop + kPlotH / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kTop + kPlotH / 2 << ")\">" << xml_escape(y_label) << "</text>\n";
  svg << "</g>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    const std::size_t n = std::min(s.values.size(), t.size());
    // Thin long series to at most ~4000 vertices.
    const std::size_t step = std::max<std::size_t>(1, n / 4000);
    for (std::size_t i = 0; i < n; i += step) {
      if (!std::isfinite(s.values[i])) continue;
      svg << fixed(px(t[i])) << ',' << fixed(py(s.values[i])) << ' ';
    }
    if (n > 0 && (n - 1) % step != 0 && std::isfinite(s.values[n - 1])) {
      svg << fixed(px(t[n - 1])) << ',' << fixed(py(s.values[n - 1]));
    }
    svg << "\"/>\n";
    if (series.size() > 1) {
      svg << "<text x=\"" << kLeft + kPlotW - 10 << "\" y=\"" << kTop + 14 + 14 * static_cast<double>(k)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">"
          << xml_escape(s.label) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string report_json(const ScenarioConfig& cfg, const RunResult& res) {
  const Trajectory& tr = res.trajectory;
  ordered_json doc;
  doc["fingerprint"] = tr.fingerprint;
  doc["scenario"] = describe(cfg.scenario);
  doc["mode"] = std::string(to_string(cfg.mode));
  doc["plant"] = std::string(to_string(tr.kind));
  doc["gain_mode"] = cfg.gain_mode;
  doc["dt"] = number(tr.dt);
  doc["samples"] = tr.size();
  doc["aborted"] = tr.aborted;
  if (tr.aborted) doc["abort_reason"] = tr.abort_reason;

  ordered_json constants = ordered_json::object();
  for (const auto& [k, v] : res.report.constants) constants[k] = number(v);
  doc["constants"] = constants;

  if (tr.size() > 0) {
    const std::size_t last = tr.size() - 1;
    doc["final"] = {{"t", number(tr.t[last])},
                    {"y", number(tr.y[last])},
                    {"z", number(tr.z[last])},
                    {"w_norm", number(tr.w_norm[last])}};
  }

  ordered_json checks = ordered_json::array();
  for (const CheckRecord& c : res.report.checks) {
    ordered_json rec;
    rec["name"] = c.name;
    rec["status"] = std::string(to_string(c.status));
    rec["passed"] = c.passed();
    rec["slack"] = number(c.worst_slack);
    rec["worst_t"] = number(c.worst_t);
    rec["tolerance"] = number(c.tolerance);
    ordered_json cs = ordered_json::object();
    for (const auto& [k, v] : c.constants) cs[k] = number(v);
    rec["constants"] = cs;
    if (!c.note.empty()) rec["note"] = c.note;
    checks.push_back(rec);
  }
  doc["checks"] = checks;

  if (cfg.mode == RunMode::kClosedLoop && cfg.checks.dichotomy) {
    const DichotomyRecord& d = res.report.dichotomy;
    doc["dichotomy"] = {{"classification", std::string(to_string(d.classification))},
                        {"regulated", d.regulated},
                        {"gain_deficient", d.gain_deficient},
                        {"z_final", number(d.z_final)},
                        {"gain_level", number(d.gain_level)},
                        {"threshold", number(d.threshold)},
                        {"tail_y", number(d.tail_y)},
                        {"tail_w", number(d.tail_w)},
                        {"note", d.note}};
  }
  doc["passed"] = res.passed();
  return doc.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_run_outputs(const std::filesystem::path& dir, const ScenarioConfig& cfg,
                                                     const RunResult& res) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const Trajectory& tr = res.trajectory;
  std::vector<std::filesystem::path> written;
  const auto emit = [&](const std::string& name, const std::string& content) {
    write_file(dir / name, content);
    written.push_back(dir / name);
  };
  emit("trajectory.csv", trajectory_csv(tr));
  emit("y.svg", svg_plot("output y(t)", "y", tr.t, {{"y", tr.y}}));
  emit("w_norm.svg", svg_plot("distributed state norm", "||w||", tr.t, {{"||w||", tr.w_norm}}));
  emit("z.svg", svg_plot("dynamic gain state z(t)", "z", tr.t, {{"z", tr.z}}));
  emit("u.svg", svg_plot("control input u(t)", "u", tr.t, {{"u", tr.u}}));
  emit("report.json", report_json(cfg, res));
  return written;
}

}  // namespace dads
