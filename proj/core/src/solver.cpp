#include "fslbm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fslbm {

const char* to_string(SurfaceRule rule) {
  switch (rule) {
    case SurfaceRule::Fsk: return "fsk";
    case SurfaceRule::FskSimplified: return "fsk-simplified";
    case SurfaceRule::Fsl: return "fsl";
    case SurfaceRule::FslSimplified: return "fsl-simplified";
  }
  return "?";
}

SurfaceRule parse_surface_rule(const std::string& name) {
  if (name == "fsk") return SurfaceRule::Fsk;
  if (name == "fsk-simplified") return SurfaceRule::FskSimplified;
  if (name == "fsl") return SurfaceRule::Fsl;
  if (name == "fsl-simplified") return SurfaceRule::FslSimplified;
  throw ParameterError("unknown free-surface rule '" + name + "' (expected fsk, fsk-simplified, fsl, fsl-simplified)");
}

Simulation::Simulation(Grid grid, TrtParams params)
    : grid_(std::move(grid)),
      params_(params),
      pdf_(grid_.size()),
      flags_(grid_.size(), CellFlag::Liquid),
      fill_(grid_.size(), 1.0),
      rho_(grid_.size(), 1.0),
      u_(grid_.size(), Vec3::Zero()) {
  params_.validate();
  mass_.mass.assign(grid_.size(), 0.0);
}

std::uint16_t Simulation::add_condition(BoundaryCondition condition) {
  conditions_.push_back(std::move(condition));
  return static_cast<std::uint16_t>(conditions_.size() - 1);
}

void Simulation::set_static_links(std::vector<BoundaryLink> links) {
  for (const auto& l : links) {
    if (l.condition >= conditions_.size()) throw ParameterError("boundary link references unknown condition");
  }
  static_links_ = std::move(links);
}

void Simulation::enable_free_surface(std::uint16_t wall_condition, std::uint16_t surface_condition, double epsilon) {
  if (wall_condition >= conditions_.size() || surface_condition >= conditions_.size()) {
    throw ParameterError("free surface references unknown condition");
  }
  if (!std::holds_alternative<SurfaceBoundary>(conditions_[surface_condition])) {
    throw ParameterError("free surface condition must be a surface boundary");
  }
  free_surface_ = true;
  wall_condition_ = wall_condition;
  surface_condition_ = surface_condition;
  epsilon_ = epsilon;
  reset_mass();
}

void Simulation::reset_mass() {
  for (CellIndex c = 0; c < grid_.size(); ++c) {
    switch (flags_[c]) {
      case CellFlag::Liquid: mass_.mass[c] = rho_[c]; break;
      case CellFlag::Interface: mass_.mass[c] = fill_[c] * rho_[c]; break;
      default: mass_.mass[c] = 0.0; break;
    }
  }
  mass_.residual = 0.0;
}

void Simulation::refresh_moments() {
  const auto& model = d3q19();
  const auto cur = pdf_.current();
  max_speed_sq_ = 0.0;
  non_finite_ = false;
  for (CellIndex c = 0; c < grid_.size(); ++c) {
    if (!is_active(flags_[c])) continue;
    const MacroState s = moments(load(cur, c), params_, model);
    rho_[c] = s.rho;
    u_[c] = s.u;
    const double speed_sq = s.u.squaredNorm();
    if (!std::isfinite(speed_sq) || !std::isfinite(s.rho)) non_finite_ = true;
    max_speed_sq_ = std::max(max_speed_sq_, speed_sq);
  }
}

void Simulation::check_stability() const {
  if (non_finite_ || max_speed_sq_ > kMaxLatticeVelocity * kMaxLatticeVelocity) {
    std::ostringstream os;
    os << "simulation diverged at step " << time_ << ": ";
    if (non_finite_) {
      os << "non-finite moments";
    } else {
      os << "max |u| = " << std::sqrt(max_speed_sq_) << " exceeds " << kMaxLatticeVelocity;
    }
    throw DivergenceError(os.str());
  }
}

void Simulation::collect_dynamic_links() {
  dynamic_links_.clear();
  const auto& surface = std::get<SurfaceBoundary>(conditions_[surface_condition_]);
  const bool needs_delta = surface.rule == SurfaceRule::Fsl || surface.rule == SurfaceRule::FslSimplified;
  for (CellIndex x = 0; x < grid_.size(); ++x) {
    if (!is_active(flags_[x])) continue;
    for (int q = 1; q < kQ; ++q) {
      const CellIndex y = grid_.neighbor(x, q);
      if (y == kNoCell || flags_[y] == CellFlag::Wall) {
        dynamic_links_.push_back({x, q, 0.5, wall_condition_});
      } else if (flags_[y] == CellFlag::Gas) {
        const double delta = needs_delta ? delta_from_fill({x, q, 0.5}, grid_, fill_) : 0.5;
        dynamic_links_.push_back({x, q, delta, surface_condition_});
      }
    }
  }
}

double Simulation::closure_value(const BoundaryLink& link, const LinkFields& fields) const {
  const auto& model = d3q19();
  const LinkCut cut{link.cell, link.q, link.delta};
  const auto& condition = conditions_[link.condition];

  if (const auto* wall = std::get_if<WallBoundary>(&condition)) {
    if (wall->rule == WallRule::Cli) return cli_wall(cut, fields, params_, model, wall->velocity);
    return bounce_back(cut, fields, params_, model, wall->velocity);
  }

  const auto& surface = std::get<SurfaceBoundary>(condition);
  const bool simplified = surface.rule == SurfaceRule::FskSimplified || surface.rule == SurfaceRule::FslSimplified;

  BoundaryValue bval;
  bval.rho_b = surface.rho_gas;
  bval.u_b = fields.u[link.cell];
  if (!simplified) {
    switch (surface.stress) {
      case StressMode::Zero: break;
      case StressMode::Imposed: bval.S_b = surface.imposed; break;
      case StressMode::Extrapolated:
        bval = extrapolate_boundary_values(cut, fields, fill_, params_, surface.rho_gas);
        break;
    }
  }

  if (surface.rule == SurfaceRule::Fsl || surface.rule == SurfaceRule::FslSimplified) {
    // The second-order rule needs e+ at the wall point, not at the node.
    bval.u_b = link_velocity(cut, fields, model);
    const auto value = apply_closure(fsl_coefficients(link.q, link.delta, params_, model, simplified), cut, fields,
                                     bval, params_, model);
    if (value) return *value;
  }
  // FSK is purely local, so it never reports a missing neighbour.
  return *apply_closure(fsk_coefficients(link.q, params_, model, simplified), cut, fields, bval, params_, model);
}

void Simulation::step() {
  const auto& model = d3q19();
  auto cur = pdf_.current();
  auto post = pdf_.next();

  for (CellIndex c = 0; c < grid_.size(); ++c) {
    if (!is_active(flags_[c])) continue;
    const MacroState s = collide_cell(cur.data() + c * kQ, post.data() + c * kQ, params_, model);
    rho_[c] = s.rho;
    u_[c] = s.u;
  }

  if (free_surface_) {
    exchange_mass(post, grid_, flags_, fill_, mass_, model);
    collect_dynamic_links();
  }
  const auto& links = free_surface_ ? dynamic_links_ : static_links_;

  const LinkFields fields{grid_, flags_, cur, post, rho_, u_};
  closure_buffer_.resize(links.size());
  for (std::size_t i = 0; i < links.size(); ++i) closure_buffer_[i] = closure_value(links[i], fields);

  stream(post, cur, grid_, flags_, model);
  for (std::size_t i = 0; i < links.size(); ++i) {
    cur[links[i].cell * kQ + model.opposite[links[i].q]] = closure_buffer_[i];
  }
  ++time_;

  refresh_moments();
  if (free_surface_) free_surface_update();
}

void Simulation::free_surface_update() {
  for (CellIndex c = 0; c < grid_.size(); ++c) {
    if (flags_[c] == CellFlag::Liquid) mass_.mass[c] = rho_[c];
  }
  events_ = update_flags(grid_, flags_, fill_, mass_, rho_, epsilon_);

  std::vector<CellIndex> fresh;
  for (const auto& ev : events_) {
    if (ev.kind == ConversionKind::GasToInterface) fresh.push_back(ev.cell);
  }
  auto cur = pdf_.current();
  for (CellIndex c : fresh) {
    const MacroState s = init_new_interface_cell(c, cur, grid_, flags_, rho_, u_, fresh, params_);
    rho_[c] = s.rho;
    u_[c] = s.u;
    fill_[c] = std::clamp(mass_.mass[c] / s.rho, 0.0, 1.0);
  }
}

}  // namespace fslbm
