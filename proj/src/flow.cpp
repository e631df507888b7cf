#include "fsb/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fsb/errors.hpp"

namespace fsb {

void FlowState::validate() const {
  if (phi_surface.size() != curve.size()) throw ArgumentError("phi_surface length must equal marker count");
  if (curve.size() < 2) throw ArgumentError("flow state needs markers");
}

FlowSolve solve_flow(const FlowState &state, std::size_t wall_panels_per_side) {
  state.validate();
  if (state.curve.size() < 9) throw ArgumentError("surface_velocity needs at least 8 surface segments");
  auto mesh = build_boundary_mesh(state.curve, wall_panels_per_side);
  FlowSolve out;
  out.solver = std::make_shared<const MixedSolver>(std::move(mesh));
  const BoundaryMesh &m = out.solver->mesh();
  const std::vector<double> zero(m.wall_count(), 0.0);
  out.phi = out.solver->solve(SurfaceTrace::from_nodes(m, state.phi_surface), zero);

  const auto &pts = state.curve.points();
  const std::size_t ns = m.surface_count();
  out.panel_velocity.resize(ns);
  std::vector<double> len(ns);
  for (std::size_t k = 0; k < ns; ++k) {
    const std::size_t j = m.surface_index(k);
    const Panel &p = m[j];
    len[k] = p.length;
    const Vec2 tau = -p.tangent; // marker direction
    const double slope = (state.phi_surface[k + 1] - state.phi_surface[k]) / p.length;
    out.panel_velocity[k] = out.phi.flux[j] * p.normal + slope * tau;
  }

  out.marker_velocity.assign(pts.size(), Vec2{});
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double l0 = len[i - 1], l1 = len[i];
    out.marker_velocity[i] = (l1 / (l0 + l1)) * out.panel_velocity[i - 1] + (l0 / (l0 + l1)) * out.panel_velocity[i];
  }
  // linear extrapolation from the two nearest panel midpoints
  auto extrapolate = [](const Vec2 &u0, const Vec2 &u1, double l0, double l1) {
    const double d0 = 0.5 * l0, d1 = l0 + 0.5 * l1;
    return u0 + (d0 / (d1 - d0)) * (u0 - u1);
  };
  out.corner_left = extrapolate(out.panel_velocity[0], out.panel_velocity[1], len[0], len[1]);
  out.corner_right = extrapolate(out.panel_velocity[ns - 1], out.panel_velocity[ns - 2], len[ns - 1], len[ns - 2]);

  double vmax = 0.0;
  for (const auto &u : out.marker_velocity) vmax = std::max(vmax, norm(u));
  for (const auto &u : out.panel_velocity) vmax = std::max(vmax, norm(u));
  out.max_speed = vmax;
  const double corner = std::max(norm(out.corner_left), norm(out.corner_right));
  out.corner_residual = vmax > 0.0 ? corner / vmax : 0.0;
  return out;
}

std::vector<Vec2> surface_velocity(const FlowState &state, std::size_t wall_panels_per_side) {
  return solve_flow(state, wall_panels_per_side).marker_velocity;
}

StateDerivative state_derivative(const FlowSolve &solve) {
  StateDerivative d;
  d.marker_velocity = solve.marker_velocity;
  d.dphi_dt.resize(d.marker_velocity.size());
  for (std::size_t i = 0; i < d.marker_velocity.size(); ++i) d.dphi_dt[i] = 0.5 * norm2(d.marker_velocity[i]);
  d.corner_residual = solve.corner_residual;
  return d;
}

StateDerivative state_derivative(const FlowState &state, std::size_t wall_panels_per_side) {
  return state_derivative(solve_flow(state, wall_panels_per_side));
}

namespace {

FlowState advance(const FlowState &base, const StateDerivative &d, double h) {
  const auto &pts = base.curve.points();
  std::vector<Vec2> p(pts.size());
  std::vector<double> phi(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    p[i] = pts[i] + h * d.marker_velocity[i];
    phi[i] = base.phi_surface[i] + h * d.dphi_dt[i];
  }
  p.front() = kLeftCorner;
  p.back() = kRightCorner;
  FlowState s;
  s.t = base.t + h;
  s.curve = InterfaceCurve(base.curve.alpha(), std::move(p));
  s.phi_surface = std::move(phi);
  return s;
}

bool touches_bottom(const FlowState &s) {
  for (const auto &p : s.curve.points())
    if (p.y <= 0.0) return true;
  return false;
}

} // namespace

FlowState rk4_step(const FlowState &state, double dt, const DerivativeFn &rhs) {
  if (!(dt > 0.0)) throw ArgumentError("rk4_step: dt must be positive");
  static constexpr const char *kStage[] = {"stage 1", "stage 2", "stage 3", "stage 4"};
  int stage = 0;
  FlowState current = state;
  auto eval = [&](const FlowState &s) {
    try {
      return rhs(s);
    } catch (const SelfIntersectionError &e) {
      const auto kind = touches_bottom(s) ? BreakdownKind::BottomContact : BreakdownKind::SelfIntersection;
      throw BreakdownError({s.t, kind, std::string(kStage[stage]) + ": " + e.what()});
    } catch (const GeometryError &e) {
      throw BreakdownError({s.t, BreakdownKind::MarkerCollision, std::string(kStage[stage]) + ": " + e.what()});
    } catch (const SingularMatrixError &e) {
      throw BreakdownError({s.t, BreakdownKind::SolverFailure, std::string(kStage[stage]) + ": " + e.what()});
    }
  };
  const auto k1 = eval(current);
  stage = 1;
  const auto k2 = eval(advance(state, k1, 0.5 * dt));
  stage = 2;
  const auto k3 = eval(advance(state, k2, 0.5 * dt));
  stage = 3;
  const auto k4 = eval(advance(state, k3, dt));

  StateDerivative combo;
  const std::size_t n = state.curve.size();
  combo.marker_velocity.resize(n);
  combo.dphi_dt.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    combo.marker_velocity[i] = (1.0 / 6.0) * (k1.marker_velocity[i] + 2.0 * k2.marker_velocity[i] +
                                              2.0 * k3.marker_velocity[i] + k4.marker_velocity[i]);
    combo.dphi_dt[i] = (k1.dphi_dt[i] + 2.0 * k2.dphi_dt[i] + 2.0 * k3.dphi_dt[i] + k4.dphi_dt[i]) / 6.0;
  }
  FlowState next = advance(state, combo, dt);
  next.t = state.t + dt;
  return next;
}

FlowState rk4_step(const FlowState &state, double dt, std::size_t wall_panels_per_side) {
  return rk4_step(state, dt, [wall_panels_per_side](const FlowState &s) {
    return state_derivative(s, wall_panels_per_side);
  });
}

double adaptive_dt(const FlowState &state, std::span<const Vec2> marker_velocity, const TimestepLimits &limits) {
  if (!(limits.cfl > 0.0 && limits.cfl <= 1.0)) throw ArgumentError("adaptive_dt: cfl must be in (0, 1]");
  constexpr double kEps = 1e-12;
  const auto &pts = state.curve.points();
  double dt = limits.dt_max;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double spacing = norm(pts[i + 1] - pts[i]);
    const double speed = std::max(norm(marker_velocity[i]), norm(marker_velocity[i + 1]));
    dt = std::min(dt, limits.cfl * spacing / (speed + kEps));
  }
  if (dt < limits.dt_min)
    throw BreakdownError({state.t, BreakdownKind::TimestepCollapse,
                          "timestep collapse: dt = " + std::to_string(dt) + " < dt_min"});
  return dt;
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw ArgumentError("Pchip: need at least two points");
  d_.assign(n, 0.0);
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x_[k + 1] - x_[k];
    if (!(h[k] > 0.0)) throw ArgumentError("Pchip: abscissae must be strictly increasing");
    delta[k] = (y_[k + 1] - y_[k]) / h[k];
  }
  if (n == 2) {
    d_[0] = d_[1] = delta[0];
    return;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) {
      d_[k] = 0.0;
    } else {
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      d_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
  }
  auto end_slope = [](double h0, double h1, double m0, double m1) {
    double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (d * m0 <= 0.0)
      d = 0.0;
    else if (m0 * m1 <= 0.0 && std::abs(d) > std::abs(3.0 * m0))
      d = 3.0 * m0;
    return d;
  };
  d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

double Pchip::operator()(double x) const {
  const std::size_t n = x_.size();
  std::size_t k = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
  k = std::clamp<std::size_t>(k, 1, n - 1) - 1;
  const double h = x_[k + 1] - x_[k];
  const double t = (x - x_[k]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * y_[k] + h10 * h * d_[k] + h01 * y_[k + 1] + h11 * h * d_[k + 1];
}

FlowState redistribute_markers(const FlowState &state) {
  state.validate();
  const auto &pts = state.curve.points();
  const std::size_t n = pts.size();
  std::vector<double> s(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) s[i] = s[i - 1] + norm(pts[i] - pts[i - 1]);
  const double total = s.back();

  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = pts[i].x;
    ys[i] = pts[i].y;
  }
  const Pchip fx(s, xs), fy(s, ys), fphi(s, state.phi_surface), falpha(s, state.curve.alpha());

  std::vector<Vec2> p(n);
  std::vector<double> phi(n), alpha(n);
  p.front() = kLeftCorner;
  p.back() = kRightCorner;
  phi.front() = state.phi_surface.front();
  phi.back() = state.phi_surface.back();
  alpha.front() = 0.0;
  alpha.back() = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double si = total * static_cast<double>(i) / static_cast<double>(n - 1);
    p[i] = {fx(si), fy(si)};
    phi[i] = fphi(si);
    alpha[i] = falpha(si);
  }
  FlowState out;
  out.t = state.t;
  out.curve = InterfaceCurve(std::move(alpha), std::move(p));
  out.phi_surface = std::move(phi);
  return out;
}

double kinetic_energy(const BoundaryMesh &mesh, const CauchyData &phi) {
  double e = 0.0;
  for (std::size_t j = 0; j < mesh.size(); ++j) e += phi.value[j] * phi.flux[j] * mesh[j].length;
  return 0.5 * e;
}

} // namespace fsb
