#include "dads/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dads/error.hpp"
#include "term_parser.hpp"

namespace dads {

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"plant", {"kind", "p_bar", "c", "sigma"}},
      {"coupling", {"kind", "theta_product", "kernel", "k_gain", "phi_weight"}},
      {"signals", {"theta1", "theta11", "theta12", "theta2", "b", "d", "delta"}},
      {"initial", {"w", "field", "velocity", "y", "z", "analytic"}},
      {"controller", {"epsilon", "gamma", "kappa", "a", "c_decay", "gains", "safety_factor", "phi"}},
      {"numerics",
       {"mode", "intervals", "dt", "horizon", "stride", "snapshot_stride", "prescribed_y", "linear_k", "blowup",
        "z_cap"}},
      {"checks",
       {"transient", "z_window", "tails", "dissipation", "dichotomy", "tail_factor", "tail_window", "settle_tol",
        "monitor_tol", "oracle", "oracle_tol", "delay_oracle", "delay_tol"}},
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

class Document {
 public:
  explicit Document(std::string_view text) {
    std::string current;
    std::map<std::string, int> header_lines;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t end = std::min(text.find('\n', pos), text.size());
      std::string_view raw = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      const std::string line = trim(raw);
      if (line.empty()) {
        if (end == text.size()) break;
        continue;
      }
      if (line.front() == '[') {
        if (line.back() != ']') throw ConfigError("malformed section header '" + line + "'", line_no);
        current = trim(std::string_view(line).substr(1, line.size() - 2));
        if (!allowed_keys().count(current)) throw ConfigError("unknown section [" + current + "]", line_no);
        if (header_lines.count(current)) throw ConfigError("duplicate section [" + current + "]", line_no);
        header_lines[current] = line_no;
        section_lines_[current] = line_no;
        sections_[current];
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + line + "'", line_no);
      if (current.empty()) throw ConfigError("key outside of any section", line_no);
      const std::string key = trim(std::string_view(line).substr(0, eq));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      if (key.empty()) throw ConfigError("empty key", line_no);
      if (value.empty()) throw ConfigError("empty value for '" + key + "'", line_no);
      if (!allowed_keys().at(current).count(key)) {
        throw ConfigError("unknown key '" + key + "' in [" + current + "]", line_no);
      }
      auto& sec = sections_[current];
      if (sec.count(key)) throw ConfigError("duplicate key '" + key + "'", line_no);
      sec[key] = Entry{value, line_no, false};
      if (end == text.size()) break;
    }
  }

  bool has(const std::string& sec, const std::string& key) const {
    const auto it = sections_.find(sec);
    return it != sections_.end() && it->second.count(key);
  }

  Entry* find(const std::string& sec, const std::string& key) {
    const auto it = sections_.find(sec);
    if (it == sections_.end()) return nullptr;
    const auto kit = it->second.find(key);
    if (kit == it->second.end()) return nullptr;
    kit->second.used = true;
    return &kit->second;
  }

  int line_of(const std::string& sec, const std::string& key) {
    if (const Entry* e = find(sec, key)) return e->line;
    const auto it = section_lines_.find(sec);
    return it == section_lines_.end() ? 0 : it->second;
  }

  const Entry& require(const std::string& sec, const std::string& key) {
    if (Entry* e = find(sec, key)) return *e;
    throw ConfigError("missing required key '" + key + "' in [" + sec + "]", line_of(sec, key));
  }

  // Wraps parse failures of a value with its line.
  template <class F>
  auto parse(const std::string& sec, const std::string& key, F&& fn) -> decltype(fn(std::string{})) {
    const Entry& e = require(sec, key);
    try {
      return fn(e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(key + ": " + err.message(), e.line);
    }
  }

  double number(const std::string& sec, const std::string& key, double fallback) {
    if (!has(sec, key)) return fallback;
    return parse(sec, key, [](const std::string& v) {
      const auto t = detail::parse_term(v);
      if (!t.is_number()) throw ConfigError("expected a number, got '" + v + "'");
      return t.number;
    });
  }

  std::size_t count(const std::string& sec, const std::string& key, std::size_t fallback) {
    if (!has(sec, key)) return fallback;
    const double v = number(sec, key, 0.0);
    if (!(v >= 0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw ConfigError(key + " must be a non-negative integer", line_of(sec, key));
    }
    return static_cast<std::size_t>(v);
  }

  bool flag(const std::string& sec, const std::string& key, bool fallback) {
    if (!has(sec, key)) return fallback;
    return parse(sec, key, [&](const std::string& v) {
      if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
      if (v == "false" || v == "no" || v == "off" || v == "0") return false;
      throw ConfigError("expected true or false, got '" + v + "'");
    });
  }

  std::string word(const std::string& sec, const std::string& key, const std::string& fallback) {
    if (!has(sec, key)) return fallback;
    return require(sec, key).value;
  }

  Signal signal(const std::string& sec, const std::string& key, const Signal& fallback) {
    if (!has(sec, key)) return fallback;
    return parse(sec, key, [](const std::string& v) { return Signal::parse(v); });
  }

  SpaceTimeSignal space_time(const std::string& sec, const std::string& key, const SpaceTimeSignal& fallback) {
    if (!has(sec, key)) return fallback;
    return parse(sec, key, [](const std::string& v) { return SpaceTimeSignal::parse(v); });
  }

  Profile profile(const std::string& sec, const std::string& key, const Profile& fallback) {
    if (!has(sec, key)) return fallback;
    return parse(sec, key, [](const std::string& v) { return Profile::parse(v); });
  }

  // Rejects keys present in the file that the chosen plant kind ignores.
  void forbid(const std::string& sec, const std::string& key, std::string_view why) {
    if (has(sec, key)) {
      throw ConfigError("key '" + key + "' is not used " + std::string(why), line_of(sec, key));
    }
  }

 private:
  std::map<std::string, Section> sections_;
  std::map<std::string, int> section_lines_;
};

Coupling build_coupling(Document& doc, PlantKind kind, const Plant& plant) {
  const std::string name = doc.word("coupling", "kind", "zero");
  const int line = doc.line_of("coupling", "kind");
  try {
    if (name == "zero") return Coupling::zero();
    if (name == "bounded_integral") {
      return Coupling::bounded_integral(doc.profile("coupling", "kernel", Profile::polynomial({0.0})),
                                        doc.number("coupling", "k_gain", 0.0),
                                        doc.number("coupling", "phi_weight", 0.0));
    }
    if (name == "heat_unstable" && kind == PlantKind::kHeat) {
      return Coupling::heat_unstable(std::get<HeatPlant>(plant).p_bar);
    }
    if (name == "transport_unstable" && kind == PlantKind::kTransport) {
      const double product = doc.number("coupling", "theta_product", 0.0);
      return Coupling::transport_unstable(std::get<TransportPlant>(plant).c, product);
    }
    if (name == "transport_delay") return Coupling::transport_delay();
    if (name == "wave_unstable") return Coupling::wave_unstable();
    if (name == "heat_unstable" || name == "transport_unstable") {
      throw ConfigError("coupling " + name + " cannot be used with a " + std::string(to_string(kind)) + " plant");
    }
  } catch (const ConfigError& e) {
    if (e.line() > 0) throw;
    throw ConfigError(e.message(), line);
  }
  throw ConfigError("unknown coupling '" + name + "'", line);
}

Plant build_plant(Document& doc) {
  const Entry& kind_entry = doc.require("plant", "kind");
  PlantKind kind;
  try {
    kind = parse_plant_kind(kind_entry.value);
  } catch (const ConfigError& e) {
    throw ConfigError(e.message(), kind_entry.line);
  }
  const Signal zero = Signal::constant(0.0);
  const Signal unit_b = Signal::floor_clamp(Signal::constant(1.0), 1.0);
  const SpaceTimeSignal zero_st{zero, Profile{}};

  Plant plant;
  switch (kind) {
    case PlantKind::kPlanar: {
      for (const char* k : {"theta11", "theta12", "delta"}) doc.forbid("signals", k, "by the planar plant");
      doc.forbid("plant", "c", "by the planar plant");
      doc.forbid("plant", "sigma", "by the planar plant");
      if (doc.has("coupling", "kind")) doc.forbid("coupling", "kind", "by the planar plant");
      PlanarPlant p;
      p.p_bar = doc.number("plant", "p_bar", 1.0);
      p.theta1 = doc.signal("signals", "theta1", zero);
      p.theta2 = doc.signal("signals", "theta2", zero);
      p.b = doc.signal("signals", "b", unit_b);
      p.d = doc.signal("signals", "d", zero);
      plant = p;
      break;
    }
    case PlantKind::kHeat: {
      for (const char* k : {"theta11", "theta12"}) doc.forbid("signals", k, "by the heat plant");
      doc.forbid("plant", "c", "by the heat plant");
      doc.forbid("plant", "sigma", "by the heat plant");
      HeatPlant p;
      p.p_bar = doc.number("plant", "p_bar", 1.0);
      p.theta1 = doc.space_time("signals", "theta1", zero_st);
      p.delta = doc.space_time("signals", "delta", zero_st);
      p.theta2 = doc.signal("signals", "theta2", zero);
      p.b = doc.signal("signals", "b", unit_b);
      p.d = doc.signal("signals", "d", zero);
      plant = p;
      break;
    }
    case PlantKind::kTransport: {
      doc.forbid("signals", "theta1", "by the transport plant (use theta11 and theta12)");
      doc.forbid("plant", "p_bar", "by the transport plant");
      doc.forbid("plant", "sigma", "by the transport plant");
      TransportPlant p;
      p.c = doc.number("plant", "c", 1.0);
      p.theta11 = doc.space_time("signals", "theta11", zero_st);
      p.theta12 = doc.signal("signals", "theta12", zero);
      p.delta = doc.space_time("signals", "delta", zero_st);
      p.theta2 = doc.signal("signals", "theta2", zero);
      p.b = doc.signal("signals", "b", unit_b);
      p.d = doc.signal("signals", "d", zero);
      plant = p;
      break;
    }
    case PlantKind::kWave: {
      for (const char* k : {"theta11", "theta12"}) doc.forbid("signals", k, "by the wave plant");
      doc.forbid("plant", "p_bar", "by the wave plant");
      WavePlant p;
      p.c = doc.number("plant", "c", 1.0);
      p.sigma = doc.number("plant", "sigma", 1.0);
      p.theta1 = doc.space_time("signals", "theta1", zero_st);
      p.delta = doc.space_time("signals", "delta", zero_st);
      p.theta2 = doc.signal("signals", "theta2", zero);
      p.b = doc.signal("signals", "b", unit_b);
      p.d = doc.signal("signals", "d", zero);
      plant = p;
      break;
    }
  }
  if (kind != PlantKind::kPlanar) {
    const Coupling coupling = build_coupling(doc, kind, plant);
    std::visit(
        [&](auto& p) {
          if constexpr (!std::is_same_v<std::decay_t<decltype(p)>, PlanarPlant>) p.coupling = coupling;
        },
        plant);
  }
  if (!b_signal(plant).has_positive_floor()) {
    throw ConfigError("b must have a positive floor, e.g. floor_clamp(const(1), 1)", doc.line_of("signals", "b"));
  }
  try {
    validate_plant(plant);
  } catch (const ConfigError& e) {
    throw ConfigError(e.message(), doc.line_of("plant", "kind"));
  }
  return plant;
}

}  // namespace

std::string_view to_string(RunMode m) {
  switch (m) {
    case RunMode::kClosedLoop:
      return "closed_loop";
    case RunMode::kOpenLoop:
      return "open_loop";
    case RunMode::kLinear:
      return "linear";
  }
  return "?";
}

ScenarioConfig parse_config(std::string_view text) {
  Document doc(text);
  ScenarioConfig cfg;
  Scenario& s = cfg.scenario;
  s.plant = build_plant(doc);
  const PlantKind kind = kind_of(s.plant);

  // Controller.
  DadsParams& p = cfg.params;
  p.epsilon = doc.number("controller", "epsilon", p.epsilon);
  p.gamma = doc.number("controller", "gamma", p.gamma);
  p.kappa = doc.number("controller", "kappa", p.kappa);
  p.a = doc.number("controller", "a", p.a);
  p.c_decay = doc.number("controller", "c_decay", p.c_decay);
  if (const auto bad = validate_params(p); !bad.empty()) {
    std::string msg = "invalid controller parameters:";
    for (const auto& v : bad) msg += " [" + v + "]";
    const int line = doc.has("controller", "a") ? doc.line_of("controller", "a") : doc.line_of("controller", "kappa");
    throw ConfigError(msg, line);
  }
  if (doc.has("controller", "phi")) {
    cfg.phi = doc.parse("controller", "phi", [](const std::string& v) {
      const auto coeffs = detail::parse_number_list(v);
      if (coeffs.size() > 5) throw ConfigError("phi takes at most 5 even coefficients");
      std::array<double, 5> c{};
      std::copy(coeffs.begin(), coeffs.end(), c.begin());
      return PhiSpec(c);
    });
  }
  s.phi = cfg.phi;
  cfg.safety_factor = doc.number("controller", "safety_factor", 1.0);
  const std::string gains = doc.word("controller", "gains", "synthesized");
  const int gains_line = doc.line_of("controller", "gains");
  try {
    if (gains == "synthesized") {
      cfg.gain_mode = "synthesized";
      cfg.gains = make_gain_profile(p, cfg.phi, cfg.safety_factor);
    } else {
      const auto t = detail::parse_term(gains);
      if (t.name != "constant" || t.args.size() != 3) {
        throw ConfigError("gains must be 'synthesized' or constant(k1, k2, k3)");
      }
      for (const auto& a : t.args) {
        if (!a.is_number()) throw ConfigError("constant gains must be numbers");
      }
      cfg.gain_mode = "constant";
      cfg.gains = GainProfile::constant(t.args[0].number, t.args[1].number, t.args[2].number);
    }
  } catch (const ConfigError& e) {
    throw ConfigError(e.message(), e.line() > 0 ? e.line() : gains_line);
  }

  // Numerics.
  const std::string mode = doc.word("numerics", "mode", "closed_loop");
  if (mode == "closed_loop") {
    cfg.mode = RunMode::kClosedLoop;
  } else if (mode == "open_loop") {
    cfg.mode = RunMode::kOpenLoop;
  } else if (mode == "linear") {
    cfg.mode = RunMode::kLinear;
  } else {
    throw ConfigError("unknown mode '" + mode + "'", doc.line_of("numerics", "mode"));
  }
  if (cfg.mode == RunMode::kClosedLoop) {
    const auto samples = linspace(-10.0, 10.0, 10001);
    const GainCheck check = verify_gains(cfg.gains, p, cfg.phi, samples);
    if (!check.ok) {
      std::ostringstream msg;
      msg << "gain P" << check.failing_index << " violates its lower bound at y = " << *check.first_failing_y;
      throw ConfigError(msg.str(), gains_line);
    }
  }
  s.intervals = doc.count("numerics", "intervals", 100);
  if (kind != PlantKind::kPlanar && s.intervals < Field::kMinIntervals) {
    throw ConfigError("intervals must be at least " + std::to_string(Field::kMinIntervals),
                      doc.line_of("numerics", "intervals"));
  }
  if (doc.word("numerics", "dt", "auto") != "auto") {
    s.dt = doc.number("numerics", "dt", 0.0);
    if (!(s.dt > 0)) throw ConfigError("dt must be positive or 'auto'", doc.line_of("numerics", "dt"));
  }
  s.horizon = doc.number("numerics", "horizon", 20.0);
  if (!(s.horizon > 0)) throw ConfigError("horizon must be positive", doc.line_of("numerics", "horizon"));
  s.stride = doc.count("numerics", "stride", 1);
  if (s.stride == 0) throw ConfigError("stride must be at least 1", doc.line_of("numerics", "stride"));
  s.snapshot_stride = doc.count("numerics", "snapshot_stride", 0);
  s.blowup = doc.number("numerics", "blowup", s.blowup);
  s.z_cap = doc.number("numerics", "z_cap", s.z_cap);
  if (doc.has("numerics", "prescribed_y")) {
    if (cfg.mode != RunMode::kOpenLoop) {
      throw ConfigError("prescribed_y requires mode = open_loop", doc.line_of("numerics", "prescribed_y"));
    }
    cfg.prescribed_y = doc.signal("numerics", "prescribed_y", Signal());
  }
  if (cfg.mode == RunMode::kLinear) {
    cfg.linear_k = doc.parse("numerics", "linear_k", [](const std::string& v) {
      const auto t = detail::parse_term(v);
      if (!t.is_number()) throw ConfigError("expected a number");
      return t.number;
    });
  } else {
    doc.forbid("numerics", "linear_k", "outside mode = linear");
  }

  // Initial condition.
  InitialCondition& init = s.init;
  init.z = doc.number("initial", "z", 0.0);
  const bool analytic = doc.flag("initial", "analytic", false);
  if (analytic) {
    for (const char* k : {"w", "field", "velocity", "y"}) doc.forbid("initial", k, "together with analytic = true");
    std::vector<double> x0;
    try {
      x0 = analytic_unstable(s.plant, 0.0, s.intervals);
    } catch (const ConfigError& e) {
      throw ConfigError(e.message(), doc.line_of("initial", "analytic"));
    }
    const std::size_t n = s.intervals + 1;
    init.field = Profile::table(std::vector<double>(x0.begin(), x0.begin() + static_cast<std::ptrdiff_t>(n)));
    if (kind == PlantKind::kWave) {
      init.velocity = Profile::table(std::vector<double>(x0.begin() + static_cast<std::ptrdiff_t>(n),
                                                         x0.begin() + static_cast<std::ptrdiff_t>(2 * n)));
    }
    init.y = x0.back();
  } else {
    init.y = doc.number("initial", "y", 0.0);
    if (kind == PlantKind::kPlanar) {
      doc.forbid("initial", "field", "by the planar plant");
      doc.forbid("initial", "velocity", "by the planar plant");
      init.w = doc.number("initial", "w", 0.0);
    } else {
      doc.forbid("initial", "w", "by field plants (use field)");
      if (kind != PlantKind::kWave) doc.forbid("initial", "velocity", "outside the wave plant");
      if (doc.word("initial", "field", "") == "history") {
        if (kind != PlantKind::kTransport || !cfg.prescribed_y) {
          throw ConfigError("field = history needs a transport plant with prescribed_y",
                            doc.line_of("initial", "field"));
        }
        init.delay_history = true;
      } else {
        init.field = doc.profile("initial", "field", Profile::polynomial({0.0}));
      }
      init.velocity = doc.profile("initial", "velocity", Profile::polynomial({0.0}));
    }
  }

  // Checks. Closed-loop estimates are on by default only in closed loop.
  const bool closed = cfg.mode == RunMode::kClosedLoop;
  CertOptions& c = cfg.checks;
  c.transient = doc.flag("checks", "transient", closed);
  c.z_window = doc.flag("checks", "z_window", closed);
  c.tails = doc.flag("checks", "tails", closed);
  c.dissipation = doc.flag("checks", "dissipation", closed);
  c.dichotomy = doc.flag("checks", "dichotomy", closed);
  if (!closed && (c.transient || c.z_window || c.tails || c.dissipation || c.dichotomy)) {
    throw ConfigError("closed-loop checks need mode = closed_loop", doc.line_of("checks", "transient"));
  }
  c.tail.y_factor = doc.number("checks", "tail_factor", c.tail.y_factor);
  c.tail.window = doc.number("checks", "tail_window", c.tail.window);
  c.tail.settle_tol = doc.number("checks", "settle_tol", c.tail.settle_tol);
  c.monitor_tol = doc.number("checks", "monitor_tol", c.monitor_tol);
  if (!(c.tail.y_factor >= 1.0)) throw ConfigError("tail_factor must be >= 1", doc.line_of("checks", "tail_factor"));
  if (!(c.tail.window > 0 && c.tail.window <= 0.2)) {
    throw ConfigError("tail_window must lie in (0, 0.2]", doc.line_of("checks", "tail_window"));
  }
  cfg.oracle = doc.flag("checks", "oracle", false);
  cfg.oracle_tol = doc.number("checks", "oracle_tol", cfg.oracle_tol);
  cfg.delay_oracle = doc.flag("checks", "delay_oracle", false);
  cfg.delay_tol = doc.number("checks", "delay_tol", 0.0);
  if (cfg.oracle) {
    if (cfg.mode != RunMode::kOpenLoop || cfg.prescribed_y) {
      throw ConfigError("oracle needs mode = open_loop without prescribed_y", doc.line_of("checks", "oracle"));
    }
    try {
      (void)analytic_unstable(s.plant, 0.0, s.intervals);
    } catch (const ConfigError& e) {
      throw ConfigError(e.message(), doc.line_of("checks", "oracle"));
    }
  }
  if (cfg.delay_oracle) {
    const bool ok = kind == PlantKind::kTransport && cfg.prescribed_y &&
                    std::get<TransportPlant>(s.plant).coupling.kind() == Coupling::Kind::kTransportDelay;
    if (!ok) {
      throw ConfigError("delay_oracle needs a transport_delay plant with prescribed_y",
                        doc.line_of("checks", "delay_oracle"));
    }
  }
  if (cfg.mode == RunMode::kLinear && kind != PlantKind::kPlanar) {
    throw ConfigError("mode = linear is only available for the planar plant", doc.line_of("numerics", "mode"));
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace dads
