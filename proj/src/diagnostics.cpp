#include "fsb/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fsb/errors.hpp"

namespace fsb {

double constant_c1(double initial_area) { return std::max(2.0 * initial_area, 4.0 / 3.0); }
double constant_c1(const BoundaryMesh &initial_mesh) { return constant_c1(polygon_area(initial_mesh)); }

double harmonic_volume_integral(const BoundaryMesh &mesh, const CauchyData &f) {
  // int f dx = oint (f dw/dn - w df/dn) ds, w = |x|^2 / 4; x.n is constant on a
  // straight panel and f is linear there, so both terms integrate exactly.
  double total = 0.0;
  for (std::size_t j = 0; j < mesh.size(); ++j) {
    const Panel &p = mesh[j];
    const double len = p.length;
    const double dwdn = 0.5 * dot(p.a, p.normal);
    const double w_int = 0.25 * (len * norm2(p.a) + len * len * dot(p.a, p.tangent) + len * len * len / 3.0);
    total += dwdn * f.value[j] * len - f.flux[j] * w_int;
  }
  return total;
}

VirialParts virial_L(const FlowSolve &solve) {
  const BoundaryMesh &mesh = solve.mesh();
  const CauchyData &phi = solve.phi;
  double x1_phi_n1 = 0.0;
  for (std::size_t j = 0; j < mesh.size(); ++j) {
    const Panel &p = mesh[j];
    if (p.normal.x == 0.0) continue;
    const double half = 0.5 * p.length * phi.slope[j];
    const double fa = phi.value[j] - half, fb = phi.value[j] + half;
    const double xa = p.a.x, xb = p.b.x;
    const double integral = p.length * ((xa * fa + xb * fb) / 3.0 + (xa * fb + xb * fa) / 6.0);
    x1_phi_n1 += p.normal.x * integral;
  }
  double wall_phi = 0.0;
  for (std::size_t k = 0; k < mesh.wall_per_side(); ++k) {
    const std::size_t j = mesh.right_begin() + k;
    wall_phi += phi.value[j] * mesh[j].length;
  }
  VirialParts v;
  v.volume_part = x1_phi_n1 - harmonic_volume_integral(mesh, phi);
  v.wall_part = phi.right_corner - wall_phi;
  v.L = v.volume_part + v.wall_part;
  return v;
}

double wall_u2_squared(const FlowSolve &solve) {
  const BoundaryMesh &mesh = solve.mesh();
  double s = 0.0;
  for (std::size_t k = 0; k < mesh.wall_per_side(); ++k) {
    const std::size_t j = mesh.right_begin() + k;
    s += solve.phi.slope[j] * solve.phi.slope[j] * mesh[j].length;
  }
  return s;
}

double volume_u1_squared(const FlowSolve &solve) {
  const BoundaryMesh &mesh = solve.mesh();
  const double grad_sq = 2.0 * kinetic_energy(mesh, solve.phi);
  double surface = 0.0;
  for (std::size_t k = 0; k < mesh.surface_count(); ++k) {
    const Panel &p = mesh[mesh.surface_index(k)];
    const Vec2 &u = solve.panel_velocity[k];
    const double x1 = p.mid.x;
    surface += p.length * (x1 * u.x * dot(u, p.normal) - 0.5 * norm2(u) * x1 * p.normal.x);
  }
  const double difference = 2.0 * surface - wall_u2_squared(solve); // int (u1^2 - u2^2)
  return 0.5 * (grad_sq + difference);
}

double riccati_envelope(double A, double c1, double t) {
  if (!(A > 0.0) || !(c1 > 0.0)) throw DomainError("riccati_envelope: requires A > 0 and c1 > 0");
  if (t < 0.0) throw DomainError("riccati_envelope: t must be nonnegative");
  const double denom = 1.0 - A * t / c1;
  if (!(denom > 0.0)) throw DomainError("riccati_envelope: t >= c1 / A (past the comparison blow-up time)");
  return A / denom;
}

double blowup_bound(double A, double c1) {
  if (!(A > 0.0)) throw DomainError("blowup_bound: A must be positive");
  return c1 / A;
}

InequalitySlacks inequality_checks(const DiagnosticsRecord &r, double c1) {
  InequalitySlacks s;
  const double lower = r.u1_sq + 0.5 * r.wall_u2_sq;
  const double dLdt = lower + r.p_volume;
  s.slack_28 = dLdt - lower;
  s.scale_28 = lower + std::abs(r.p_volume);
  s.schwarz_vol = r.u1_sq * r.area - r.volume_part * r.volume_part;
  s.scale_vol = std::max(r.u1_sq * r.area, r.volume_part * r.volume_part);
  s.schwarz_wall = r.wall_u2_sq / 3.0 - r.wall_part * r.wall_part;
  s.scale_wall = std::max(r.wall_u2_sq / 3.0, r.wall_part * r.wall_part);
  s.riccati = dLdt - r.L * r.L / c1;
  s.scale_riccati = std::max(std::abs(dLdt), r.L * r.L / c1);
  return s;
}

namespace {

double centered_derivative(double f0, double f2, const DiagnosticsRecord &prev, const DiagnosticsRecord &cur,
                           const DiagnosticsRecord &next) {
  const double h0 = cur.t - prev.t, h1 = next.t - cur.t;
  if (!(h0 > 0.0) || std::abs(h1 - h0) > 1e-9 * std::max(h0, h1))
    throw ArgumentError("identity residual: records are not uniformly spaced in time");
  return (f2 - f0) / (h0 + h1);
}

} // namespace

double identity_residual_26(const DiagnosticsRecord &prev, const DiagnosticsRecord &cur,
                            const DiagnosticsRecord &next) {
  const double d = centered_derivative(prev.volume_part, next.volume_part, prev, cur, next);
  return std::abs(d - (cur.u1_sq + cur.p_volume - cur.wall_p_integral));
}

double identity_residual_27(const DiagnosticsRecord &prev, const DiagnosticsRecord &cur,
                            const DiagnosticsRecord &next) {
  const double d = centered_derivative(prev.wall_part, next.wall_part, prev, cur, next);
  return std::abs(d - (0.5 * cur.wall_u2_sq + cur.wall_p_integral));
}

double identity_scale_26(const DiagnosticsRecord &r) {
  return r.u1_sq + std::abs(r.p_volume) + std::abs(r.wall_p_integral);
}

double identity_scale_27(const DiagnosticsRecord &r) { return 0.5 * r.wall_u2_sq + std::abs(r.wall_p_integral); }

DiagnosticsRecord make_record(const FlowState &state, const FlowSolve &solve, const RecordOptions &opt) {
  const BoundaryMesh &mesh = solve.mesh();
  DiagnosticsRecord r;
  r.t = state.t;
  const auto v = virial_L(solve);
  r.L = v.L;
  r.volume_part = v.volume_part;
  r.wall_part = v.wall_part;
  r.energy = kinetic_energy(mesh, solve.phi);
  r.area = polygon_area(mesh);
  r.corner_residual = solve.corner_residual;

  const auto field = make_pressure_field(solve, opt.near_field_factor);
  const auto sample = pressure_min(field, opt.lattice);
  r.p_min = sample.min;
  r.p_abs_max = sample.max_abs;
  r.wall_p_integral = wall_pressure_integral(field);
  r.u1_sq = volume_u1_squared(solve);
  r.wall_u2_sq = wall_u2_squared(solve);
  r.p_volume = -harmonic_volume_integral(mesh, field.phi_t) - r.energy;

  if (opt.A > 0.0 && opt.c1 > 0.0 && state.t < opt.c1 / opt.A) r.envelope = riccati_envelope(opt.A, opt.c1, state.t);
  if (opt.c1 > 0.0) {
    const auto s = inequality_checks(r, opt.c1);
    r.slack_28 = s.slack_28;
    r.schwarz_vol = s.schwarz_vol;
    r.schwarz_wall = s.schwarz_wall;
    r.riccati_slack = s.riccati;
  }
  return r;
}

double max_discrete_curvature(const InterfaceCurve &curve) {
  const auto &p = curve.points();
  double kmax = 0.0;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const Vec2 e0 = p[i] - p[i - 1], e1 = p[i + 1] - p[i];
    const double l0 = norm(e0), l1 = norm(e1);
    if (l0 == 0.0 || l1 == 0.0) return std::numeric_limits<double>::infinity();
    const double turn = std::abs(std::atan2(cross(e0, e1), dot(e0, e1)));
    kmax = std::max(kmax, turn / (0.5 * (l0 + l1)));
  }
  return kmax;
}

std::optional<BreakdownSignal> detect_breakdown(const FlowState &state, const BreakdownContext &ctx,
                                                const DetectorThresholds &thr) {
  const auto &pts = state.curve.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i].y <= 0.0)
      return BreakdownSignal{state.t, BreakdownKind::BottomContact, "marker " + std::to_string(i) + " reached x2 <= 0"};

  for (std::size_t i = 1; i + 1 < pts.size(); ++i)
    if (!(pts[i].x > 0.0 && pts[i].x < 1.0))
      return BreakdownSignal{state.t, BreakdownKind::SelfIntersection,
                             "marker " + std::to_string(i) + " crossed a side wall"};
  if (self_intersects(state.curve))
    return BreakdownSignal{state.t, BreakdownKind::SelfIntersection, "interface polyline self-intersects"};

  const double spacing = state.curve.min_spacing();
  if (spacing < thr.collide_tol * ctx.initial_spacing)
    return BreakdownSignal{state.t, BreakdownKind::MarkerCollision,
                           "marker spacing " + std::to_string(spacing) + " below collision threshold"};

  const double curv = max_discrete_curvature(state.curve);
  if (curv > thr.curvature_factor / ctx.initial_spacing)
    return BreakdownSignal{state.t, BreakdownKind::CurvatureBlowup,
                           "discrete curvature " + std::to_string(curv) + " above threshold"};

  if (ctx.timestep_collapsed)
    return BreakdownSignal{state.t, BreakdownKind::TimestepCollapse, ctx.timestep_detail};

  if (ctx.L > thr.L_max)
    return BreakdownSignal{state.t, BreakdownKind::LOverflow, "L = " + std::to_string(ctx.L) + " exceeds L_max"};
  return std::nullopt;
}

} // namespace fsb
