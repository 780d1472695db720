#include "fslbm/scenario.hpp"

#include "fslbm/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace fslbm {

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::PlateTransient: return "plate_transient";
    case ScenarioKind::Couette: return "couette";
    case ScenarioKind::Poiseuille: return "poiseuille";
    case ScenarioKind::Film: return "film";
    case ScenarioKind::DamBreak: return "dam_break";
  }
  return "?";
}

ScenarioKind parse_scenario_kind(const std::string& name) {
  for (auto k : {ScenarioKind::PlateTransient, ScenarioKind::Couette, ScenarioKind::Poiseuille, ScenarioKind::Film,
                 ScenarioKind::DamBreak}) {
    if (name == to_string(k)) return k;
  }
  throw ParameterError("unknown scenario '" + name +
                       "' (expected plate_transient, couette, poiseuille, film, dam_break)");
}

const char* to_string(WallRule rule) { return rule == WallRule::Cli ? "cli" : "bounce-back"; }

WallRule parse_wall_rule(const std::string& name) {
  if (name == "bounce-back") return WallRule::BounceBack;
  if (name == "cli") return WallRule::Cli;
  throw ParameterError("unknown wall rule '" + name + "' (expected bounce-back, cli)");
}

TrtParams Scenario::params_at(double scale) const {
  TrtParams p;
  p.lambda_plus = lambda_plus;
  p.form = form;
  p.use_nonlinear = nonlinear;
  p.validate();
  set_magic(p, magic);
  if (kind == ScenarioKind::Film || kind == ScenarioKind::Poiseuille) {
    const double a = slope.angle();
    p.force = gravity / (scale * scale * scale) * Vec3(std::cos(a), 0.0, std::sin(a));
  }
  return p;
}

void Scenario::validate() const {
  TrtParams p;
  p.lambda_plus = lambda_plus;
  p.validate();
  set_magic(p, magic);
  if (kind == ScenarioKind::DamBreak) return;
  if (resolutions.empty()) throw ParameterError("resolutions must not be empty");
  for (std::size_t i = 0; i < resolutions.size(); ++i) {
    if (!(resolutions[i] > 0.0)) throw ParameterError("resolutions must be positive");
    if (i > 0 && !(resolutions[i] > resolutions[i - 1])) {
      throw ParameterError("resolutions must be strictly increasing");
    }
  }
  if (!(height > 1.0)) throw ParameterError("height must exceed one lattice spacing");
  if (slope.run < 1 || slope.rise < 0) throw ParameterError("slope must be rise/run with run >= 1 and rise >= 0");
  if (kind == ScenarioKind::PlateTransient) {
    if (!slope.straight()) throw ParameterError("plate_transient supports straight channels only");
    if (times.empty()) throw ParameterError("plate_transient needs at least one sample time");
    for (double t : times) {
      if (!(t > 0.0)) throw ParameterError("sample times must be positive");
    }
  }
  if (steady.interval < 1) throw ParameterError("steady.interval must be at least 1");
  if (!(steady.tolerance > 0.0)) throw ParameterError("steady.tolerance must be positive");
}

namespace {

struct Setup {
  ChannelGeometry geometry;
  Simulation sim;
  std::vector<Vec3> oracle;  // per active cell
};

Setup build(const Scenario& s, double scale) {
  const TrtParams params = s.params_at(scale);
  const double nu = viscosity(params);
  const double h = s.height * scale;

  ChannelSpec spec;
  spec.height = h;
  spec.slope = s.slope;

  std::vector<BoundaryCondition> conditions;
  SurfaceBoundary surface;
  surface.rule = s.rule;
  surface.stress = StressMode::Zero;
  WallBoundary wall;
  wall.rule = s.wall;

  const double angle = s.slope.angle();
  const Vec3 n(-std::sin(angle), 0.0, std::cos(angle));
  const Vec3 t(std::cos(angle), 0.0, std::sin(angle));

  switch (s.kind) {
    case ScenarioKind::PlateTransient: {
      WallBoundary plate = wall;
      plate.velocity = s.wall_velocity * t;
      conditions = {surface, plate};
      spec.below = CellFlag::Gas;
      spec.above = CellFlag::Wall;
      break;
    }
    case ScenarioKind::Couette: {
      const double shear = s.shear / (scale * scale);
      surface.stress = StressMode::Imposed;
      surface.imposed = 0.5 * shear * (t * n.transpose() + n * t.transpose());
      conditions = {wall, surface};
      spec.above = CellFlag::Gas;
      break;
    }
    case ScenarioKind::Poiseuille:
      conditions = {wall, wall};
      break;
    case ScenarioKind::Film:
      conditions = {wall, surface};
      spec.above = CellFlag::Gas;
      break;
    case ScenarioKind::DamBreak:
      throw ParameterError("dam_break scenarios run through run_dam_break");
  }
  spec.bottom_condition = 0;
  spec.top_condition = 1;

  ChannelGeometry geometry = build_channel(spec);
  Setup out{geometry, Simulation(geometry.grid, params), {}};
  for (auto& c : conditions) out.sim.add_condition(c);
  apply_channel(out.sim, out.geometry);

  const double g = s.gravity / (scale * scale * scale);
  const double shear = s.shear / (scale * scale);
  out.oracle.reserve(out.geometry.active.size());
  for (CellIndex c : out.geometry.active) {
    const double d = out.geometry.distance[c];
    double u = 0.0;
    switch (s.kind) {
      case ScenarioKind::Couette: u = oracle_couette(d, h, shear); break;
      case ScenarioKind::Poiseuille: u = oracle_poiseuille(d, h, g, nu); break;
      case ScenarioKind::Film: u = oracle_film_parabola(d, h, g, nu); break;
      default: break;
    }
    out.oracle.push_back(u * t);
  }
  return out;
}

double max_norm(std::span<const Vec3> u, const std::vector<CellIndex>& cells) {
  double m = 0.0;
  for (CellIndex c : cells) m = std::max(m, u[c].norm());
  return m;
}

std::uint64_t run_to_steady(Simulation& sim, const ChannelGeometry& geometry, const SteadyCriterion& steady,
                            double scale, const RunHooks& hooks) {
  std::vector<Vec3> previous(sim.grid().size(), Vec3::Zero());
  for (CellIndex c : geometry.active) previous[c] = sim.u()[c];
  const auto interval = static_cast<std::uint64_t>(steady.interval);
  while (true) {
    for (std::uint64_t i = 0; i < interval; ++i) {
      sim.step();
      if (hooks.on_step) hooks.on_step(scale, sim);
    }
    sim.check_stability();
    double change = 0.0;
    for (CellIndex c : geometry.active) change = std::max(change, (sim.u()[c] - previous[c]).norm());
    const double magnitude = max_norm(sim.u(), geometry.active);
    if (change == 0.0 || (magnitude > 0.0 && change / magnitude < steady.tolerance)) return sim.time();
    if (sim.time() >= steady.max_steps) {
      std::ostringstream os;
      os << "no steady state after " << sim.time() << " steps (relative change " << change / magnitude << ")";
      throw Error(os.str());
    }
    for (CellIndex c : geometry.active) previous[c] = sim.u()[c];
  }
}

std::string format_time(double t) {
  std::ostringstream os;
  os << "T=" << std::setprecision(6) << t;
  return os.str();
}

}  // namespace

std::vector<ErrorReport> run_scenario(const Scenario& s, const RunHooks& hooks) {
  s.validate();
  if (s.kind == ScenarioKind::DamBreak) throw ParameterError("dam_break scenarios run through run_dam_break");
  const std::string name = s.name.empty() ? to_string(s.kind) : s.name;
  const std::string rule = s.kind == ScenarioKind::Poiseuille ? to_string(s.wall) : to_string(s.rule);

  std::vector<ErrorReport> reports;
  for (double scale : s.resolutions) {
    Setup setup = build(s, scale);
    Simulation& sim = setup.sim;
    const auto& geometry = setup.geometry;
    const double h = s.height * scale;

    if (s.kind == ScenarioKind::PlateTransient) {
      sim.initialise([](CellIndex) { return MacroState{}; });
      const double nu = viscosity(sim.params());
      std::vector<double> times = s.times;
      std::sort(times.begin(), times.end());
      std::vector<double> field(geometry.active.size());
      std::vector<double> oracle(geometry.active.size());
      std::vector<Vec3> oracle_vec(geometry.active.size(), Vec3::Zero());
      for (double T : times) {
        const auto target = static_cast<std::uint64_t>(std::llround(T * h * h / nu));
        while (sim.time() < target) {
          sim.step();
          if (hooks.on_step) hooks.on_step(scale, sim);
        }
        sim.check_stability();
        const double t_actual = static_cast<double>(sim.time());
        double max_dev = 0.0;
        for (std::size_t i = 0; i < geometry.active.size(); ++i) {
          const CellIndex c = geometry.active[i];
          const double z = geometry.distance[c];
          field[i] = sim.u()[c].dot(geometry.tangent);
          oracle[i] = oracle_plate_transient(z, t_actual, h, nu, 1.0, s.wall_velocity);
          oracle_vec[i] = oracle[i] * geometry.tangent;
          max_dev = std::max(max_dev, (sim.u()[c] - oracle_vec[i]).norm());
        }
        ErrorReport r;
        r.scenario = name;
        r.rule = rule;
        r.series = format_time(T);
        r.dx = 1.0 / scale;
        r.h = h;
        r.l2 = plate_error(field, oracle, h, s.wall_velocity);
        r.linf = max_dev / s.wall_velocity;
        r.steps = sim.time();
        reports.push_back(r);
        if (hooks.on_finish && T == times.back()) hooks.on_finish({s, scale, sim, geometry, oracle_vec});
      }
      continue;
    }

    const Vec3 force = sim.params().force;
    if (s.analytic_init) {
      std::vector<Vec3> start(sim.grid().size(), Vec3::Zero());
      for (std::size_t i = 0; i < geometry.active.size(); ++i) start[geometry.active[i]] = setup.oracle[i];
      sim.initialise([&](CellIndex c) { return MacroState{1.0, start[c]}; });
    } else {
      // Rest state: zero momentum, so u = F / 2.
      sim.initialise([&](CellIndex) { return MacroState{1.0, 0.5 * force}; });
    }
    const std::uint64_t steps = run_to_steady(sim, geometry, s.steady, scale, hooks);

    std::vector<Vec3> field;
    field.reserve(geometry.active.size());
    for (CellIndex c : geometry.active) field.push_back(sim.u()[c]);
    const ErrorNorms norms = error_norms(std::span<const Vec3>(field), std::span<const Vec3>(setup.oracle));
    ErrorReport r;
    r.scenario = name;
    r.rule = rule;
    r.series = "steady";
    r.dx = 1.0 / scale;
    r.h = h;
    r.l2 = norms.l2;
    r.linf = norms.linf;
    r.steps = steps;
    reports.push_back(r);
    if (hooks.on_finish) hooks.on_finish({s, scale, sim, geometry, setup.oracle});
  }
  assign_orders(reports);
  return reports;
}

void assign_orders(std::vector<ErrorReport>& reports) {
  std::map<std::string, std::vector<std::size_t>> series;
  std::vector<std::string> order;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const std::string key = reports[i].scenario + "|" + reports[i].rule + "|" + reports[i].series;
    if (!series.count(key)) order.push_back(key);
    series[key].push_back(i);
  }
  for (const auto& key : order) {
    const auto& idx = series[key];
    if (idx.size() < 3) continue;
    std::vector<double> dx, err;
    for (std::size_t i : idx) {
      dx.push_back(reports[i].dx);
      err.push_back(reports[i].l2);
    }
    const OrderEstimate est = observed_order(dx, err);
    for (std::size_t i : idx) {
      reports[i].observed_order = est.order;
      reports[i].exact = est.exact();
    }
  }
}

void write_errors_csv(std::ostream& os, const std::vector<ErrorReport>& reports) {
  os << "scenario,rule,series,dx,h,L2,Linf,steps,observed_order\n";
  os << std::setprecision(17);
  for (const auto& r : reports) {
    os << r.scenario << ',' << r.rule << ',' << r.series << ',' << r.dx << ',' << r.h << ',' << r.l2 << ','
       << r.linf << ',' << r.steps << ',';
    if (r.observed_order) {
      os << *r.observed_order;
    } else if (r.exact) {
      os << "exact";
    }
    os << '\n';
  }
}

}  // namespace fslbm
