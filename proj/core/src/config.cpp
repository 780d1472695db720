#include "fslbm/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace fslbm {

namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& message) {
  const YAML::Mark m = node.Mark();
  if (m.is_null()) throw ConfigError(message);
  throw ConfigError(message, m.line + 1, m.column + 1);
}

void check_keys(const YAML::Node& map, std::initializer_list<const char*> allowed, const std::string& section) {
  if (!map.IsMap()) fail(map, section + ": expected a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!known) fail(kv.first, "unknown key '" + key + "' in " + section);
  }
}

std::string text(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) fail(node, field + ": expected a scalar");
  return node.Scalar();
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string a = s.substr(0, slash);
    const std::string b = s.substr(slash + 1);
    double num = 0.0, den = 0.0;
    if (a.find('/') != std::string::npos || b.find('/') != std::string::npos) return false;
    if (!parse_number(a, num) || !parse_number(b, den) || den == 0.0) return false;
    out = num / den;
    return true;
  }
  out = std::strtod(s.c_str(), &end);
  return end != s.c_str() && *end == '\0' && std::isfinite(out);
}

double real(const YAML::Node& node, const std::string& field) {
  double v = 0.0;
  if (!parse_number(text(node, field), v)) fail(node, field + ": expected a number or fraction, got '" + node.Scalar() + "'");
  return v;
}

long long integer(const YAML::Node& node, const std::string& field) {
  const std::string s = text(node, field);
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') fail(node, field + ": expected an integer, got '" + s + "'");
  return v;
}

bool boolean(const YAML::Node& node, const std::string& field) {
  const std::string s = text(node, field);
  if (s == "true" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "no" || s == "off") return false;
  fail(node, field + ": expected true or false, got '" + s + "'");
}

std::vector<double> real_list(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence()) fail(node, field + ": expected a list");
  std::vector<double> out;
  for (const auto& item : node) out.push_back(real(item, field));
  return out;
}

std::pair<int, int> int_pair(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence() || node.size() != 2) fail(node, field + ": expected [width, height]");
  return {static_cast<int>(integer(node[0], field)), static_cast<int>(integer(node[1], field))};
}

Slope slope(const YAML::Node& node) {
  const std::string s = text(node, "geometry.slope");
  Slope out;
  const auto slash = s.find('/');
  char* end = nullptr;
  if (slash == std::string::npos) {
    out.rise = static_cast<int>(std::strtol(s.c_str(), &end, 10));
    if (s.empty() || *end != '\0') fail(node, "geometry.slope: expected rise/run, got '" + s + "'");
    out.run = 1;
  } else {
    const std::string a = s.substr(0, slash);
    const std::string b = s.substr(slash + 1);
    out.rise = static_cast<int>(std::strtol(a.c_str(), &end, 10));
    const bool ok_a = !a.empty() && *end == '\0';
    out.run = static_cast<int>(std::strtol(b.c_str(), &end, 10));
    const bool ok_b = !b.empty() && *end == '\0';
    if (!ok_a || !ok_b) fail(node, "geometry.slope: expected rise/run, got '" + s + "'");
  }
  if (out.rise < 0 || out.run < 1) fail(node, "geometry.slope: need rise >= 0 and run >= 1");
  return out;
}

template <typename Fn>
auto parse_enum(const YAML::Node& node, const std::string& field, Fn&& fn) {
  try {
    return fn(text(node, field));
  } catch (const ParameterError& e) {
    fail(node, field + ": " + e.what());
  }
}

void check_lambda(const YAML::Node& node, double v) {
  if (!(v > -2.0 && v < 0.0)) {
    std::ostringstream os;
    os << "lambda_plus out of (-2,0): " << v;
    fail(node, os.str());
  }
}

void parse_collision(const YAML::Node& node, Scenario& s) {
  check_keys(node, {"lambda_plus", "viscosity", "tau", "magic", "equilibrium", "nonlinear"}, "collision");
  int rate_keys = 0;
  if (node["lambda_plus"]) {
    ++rate_keys;
    s.lambda_plus = real(node["lambda_plus"], "collision.lambda_plus");
    check_lambda(node["lambda_plus"], s.lambda_plus);
  }
  if (node["viscosity"]) {
    ++rate_keys;
    const double nu = real(node["viscosity"], "collision.viscosity");
    if (!(nu > 0.0)) fail(node["viscosity"], "collision.viscosity must be positive");
    s.lambda_plus = -1.0 / (3.0 * nu + 0.5);
    check_lambda(node["viscosity"], s.lambda_plus);
  }
  if (node["tau"]) {
    ++rate_keys;
    const double tau = real(node["tau"], "collision.tau");
    if (!(tau > 0.0)) fail(node["tau"], "collision.tau must be positive");
    s.lambda_plus = -1.0 / tau;
    check_lambda(node["tau"], s.lambda_plus);
  }
  if (rate_keys > 1) fail(node, "collision: give only one of lambda_plus, viscosity, tau");
  if (node["magic"]) {
    s.magic = real(node["magic"], "collision.magic");
    TrtParams p;
    p.lambda_plus = s.lambda_plus;
    try {
      set_magic(p, s.magic);
    } catch (const ParameterError& e) {
      fail(node["magic"], std::string("collision.magic: ") + e.what());
    }
  }
  if (node["equilibrium"]) {
    const std::string e = text(node["equilibrium"], "collision.equilibrium");
    if (e == "incompressible") {
      s.form = EquilibriumForm::Incompressible;
    } else if (e == "compressible") {
      s.form = EquilibriumForm::Compressible;
    } else {
      fail(node["equilibrium"], "collision.equilibrium: expected incompressible or compressible");
    }
  }
  if (node["nonlinear"]) s.nonlinear = boolean(node["nonlinear"], "collision.nonlinear");
}

void parse_dam_break(const YAML::Node& node, DamBreakSetup& d) {
  check_keys(node, {"column", "domain", "viscosity", "magic", "gravity", "hydrostatic", "epsilon", "samples"},
             "dam_break");
  if (node["column"]) std::tie(d.column_width, d.column_height) = int_pair(node["column"], "dam_break.column");
  if (node["domain"]) std::tie(d.domain_width, d.domain_height) = int_pair(node["domain"], "dam_break.domain");
  if (d.column_width < 2 || d.column_height < 2) fail(node, "dam_break.column must be at least 2x2");
  if (d.column_width > d.domain_width || d.column_height > d.domain_height) {
    fail(node, "dam_break: column does not fit into the domain");
  }
  if (node["viscosity"]) {
    d.viscosity = real(node["viscosity"], "dam_break.viscosity");
    if (!(d.viscosity > 0.0)) fail(node["viscosity"], "dam_break.viscosity must be positive");
    check_lambda(node["viscosity"], -1.0 / (3.0 * d.viscosity + 0.5));
  }
  if (node["magic"]) d.magic = real(node["magic"], "dam_break.magic");
  try {
    (void)TrtParams::from_viscosity(d.viscosity, d.magic);
  } catch (const ParameterError& e) {
    fail(node, std::string("dam_break: ") + e.what());
  }
  if (node["gravity"]) {
    d.gravity = real(node["gravity"], "dam_break.gravity");
    if (!(d.gravity >= 0.0)) fail(node["gravity"], "dam_break.gravity must be non-negative");
  }
  if (node["hydrostatic"]) d.hydrostatic = boolean(node["hydrostatic"], "dam_break.hydrostatic");
  if (node["epsilon"]) {
    d.conversion_epsilon = real(node["epsilon"], "dam_break.epsilon");
    if (!(d.conversion_epsilon >= 0.0)) fail(node["epsilon"], "dam_break.epsilon must be non-negative");
  }
  if (node["samples"]) {
    const auto& seq = node["samples"];
    if (!seq.IsSequence()) fail(seq, "dam_break.samples: expected a list");
    d.samples.clear();
    for (const auto& item : seq) {
      const long long v = integer(item, "dam_break.samples");
      if (v < 1) fail(item, "dam_break.samples must be positive step counts");
      d.samples.push_back(static_cast<std::uint64_t>(v));
    }
  }
}

ParsedConfig from_node(const YAML::Node& root) {
  if (!root.IsMap()) fail(root, "scenario file must be a mapping");
  check_keys(root,
             {"scenario", "name", "rule", "wall", "geometry", "collision", "forcing", "resolutions", "times", "steady",
              "dam_break", "output"},
             "scenario file");
  ParsedConfig cfg;
  Scenario& s = cfg.scenario;
  if (!root["scenario"]) fail(root, "missing required key 'scenario'");
  s.kind = parse_enum(root["scenario"], "scenario", parse_scenario_kind);
  if (s.kind == ScenarioKind::PlateTransient) {
    s.times = {1.0 / 64.0, 1.0 / 8.0, 3.0 / 8.0, 3.0 / 4.0};
  }
  if (root["name"]) s.name = text(root["name"], "name");
  if (root["rule"]) {
    s.rule = parse_enum(root["rule"], "rule", parse_surface_rule);
    s.dam_break.rule = s.rule;
  }
  if (root["wall"]) s.wall = parse_enum(root["wall"], "wall", parse_wall_rule);

  if (const auto g = root["geometry"]) {
    check_keys(g, {"height", "slope"}, "geometry");
    if (g["height"]) {
      s.height = real(g["height"], "geometry.height");
      if (!(s.height > 1.0)) fail(g["height"], "geometry.height must exceed 1");
    }
    if (g["slope"]) s.slope = slope(g["slope"]);
  }
  if (const auto c = root["collision"]) parse_collision(c, s);
  if (const auto f = root["forcing"]) {
    check_keys(f, {"gravity", "wall_velocity", "shear"}, "forcing");
    if (f["gravity"]) s.gravity = real(f["gravity"], "forcing.gravity");
    if (f["wall_velocity"]) s.wall_velocity = real(f["wall_velocity"], "forcing.wall_velocity");
    if (f["shear"]) s.shear = real(f["shear"], "forcing.shear");
  }
  if (const auto r = root["resolutions"]) {
    s.resolutions = real_list(r, "resolutions");
    if (s.resolutions.empty()) fail(r, "resolutions must not be empty");
    for (std::size_t i = 0; i < s.resolutions.size(); ++i) {
      if (!(s.resolutions[i] > 0.0)) fail(r[i], "resolutions must be positive");
      if (i > 0 && !(s.resolutions[i] > s.resolutions[i - 1])) fail(r[i], "resolutions must be strictly increasing");
    }
  }
  if (const auto t = root["times"]) {
    s.times = real_list(t, "times");
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      if (!(s.times[i] > 0.0)) fail(t[i], "times must be positive");
    }
  }
  if (const auto st = root["steady"]) {
    check_keys(st, {"tolerance", "interval", "max_steps", "init"}, "steady");
    if (st["tolerance"]) {
      s.steady.tolerance = real(st["tolerance"], "steady.tolerance");
      if (!(s.steady.tolerance > 0.0)) fail(st["tolerance"], "steady.tolerance must be positive");
    }
    if (st["interval"]) {
      const long long v = integer(st["interval"], "steady.interval");
      if (v < 1) fail(st["interval"], "steady.interval must be at least 1");
      s.steady.interval = static_cast<int>(v);
    }
    if (st["max_steps"]) {
      const long long v = integer(st["max_steps"], "steady.max_steps");
      if (v < 1) fail(st["max_steps"], "steady.max_steps must be positive");
      s.steady.max_steps = static_cast<std::uint64_t>(v);
    }
    if (st["init"]) {
      const std::string v = text(st["init"], "steady.init");
      if (v == "rest") {
        s.analytic_init = false;
      } else if (v == "analytic") {
        s.analytic_init = true;
      } else {
        fail(st["init"], "steady.init: expected rest or analytic");
      }
    }
  }
  if (const auto d = root["dam_break"]) {
    if (s.kind != ScenarioKind::DamBreak) fail(d, "dam_break section requires scenario: dam_break");
    parse_dam_break(d, s.dam_break);
  }
  if (const auto o = root["output"]) {
    check_keys(o, {"snapshots_every", "profile_axis", "seed"}, "output");
    if (o["snapshots_every"]) {
      const long long v = integer(o["snapshots_every"], "output.snapshots_every");
      if (v < 0) fail(o["snapshots_every"], "output.snapshots_every must be >= 0");
      cfg.run.snapshots_every = static_cast<std::uint64_t>(v);
    }
    if (o["profile_axis"]) {
      const std::string a = text(o["profile_axis"], "output.profile_axis");
      if (a == "x") {
        cfg.run.profile_axis = 0;
      } else if (a == "y") {
        cfg.run.profile_axis = 1;
      } else if (a == "z") {
        cfg.run.profile_axis = 2;
      } else {
        fail(o["profile_axis"], "output.profile_axis: expected x, y or z");
      }
    }
    if (o["seed"]) cfg.run.seed = static_cast<std::uint64_t>(integer(o["seed"], "output.seed"));
  }

  if (s.kind == ScenarioKind::PlateTransient && !s.slope.straight()) {
    fail(root["geometry"], "plate_transient supports straight channels only");
  }
  try {
    s.validate();
  } catch (const ParameterError& e) {
    fail(root, e.what());
  }
  return cfg;
}

ParsedConfig parse_root(const std::function<YAML::Node()>& load) {
  YAML::Node root;
  try {
    root = load();
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  try {
    return from_node(root);
  } catch (const YAML::Exception& e) {
    if (e.mark.is_null()) throw ConfigError(e.msg);
    throw ConfigError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
}

}  // namespace

ParsedConfig parse_config_string(const std::string& text) {
  return parse_root([&] { return YAML::Load(text); });
}

ParsedConfig parse_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open scenario file " + path.string());
  std::stringstream buffer;
  buffer << is.rdbuf();
  ParsedConfig cfg = parse_config_string(buffer.str());
  cfg.run.scenario_path = path;
  return cfg;
}

}  // namespace fslbm
