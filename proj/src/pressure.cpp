#include "fsb/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fsb/errors.hpp"

namespace fsb {

CauchyData solve_phi_t(const FlowSolve &solve) {
  const BoundaryMesh &mesh = solve.mesh();
  std::vector<double> nodal(solve.marker_velocity.size());
  for (std::size_t i = 0; i < nodal.size(); ++i) nodal[i] = -0.5 * norm2(solve.marker_velocity[i]);
  const std::vector<double> zero(mesh.wall_count(), 0.0);
  return solve.solver->solve(SurfaceTrace::from_nodes(mesh, nodal), zero);
}

PressureField make_pressure_field(const FlowSolve &solve, double near_field_factor) {
  return {solve.solver, solve.phi, solve_phi_t(solve), near_field_factor};
}

std::vector<double> pressure_at(const PressureField &field, std::span<const Vec2> points) {
  const auto phi = eval_interior(field.mesh(), field.phi, points, field.near_field_factor);
  const auto phit = eval_interior(field.mesh(), field.phi_t, points, field.near_field_factor);
  std::vector<double> p(points.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = -phit.values[i] - 0.5 * norm2(phi.gradients[i]);
  return p;
}

PoissonCheck pressure_poisson_residual(const PressureField &field, std::span<const Vec2> points, double h) {
  if (!(h > 0.0)) throw ArgumentError("pressure_poisson_residual: h must be positive");
  std::vector<Vec2> stencil;
  stencil.reserve(5 * points.size());
  for (const auto &x : points) {
    stencil.push_back(x);
    stencil.push_back({x.x + h, x.y});
    stencil.push_back({x.x - h, x.y});
    stencil.push_back({x.x, x.y + h});
    stencil.push_back({x.x, x.y - h});
  }
  const auto p = pressure_at(field, stencil);
  const auto hess = eval_interior_full(field.mesh(), field.phi, points, field.near_field_factor);
  PoissonCheck out;
  out.residual.resize(points.size());
  out.rhs.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double *q = &p[5 * i];
    const double lap = (q[1] + q[2] + q[3] + q[4] - 4.0 * q[0]) / (h * h);
    const double d1u1 = hess[i].hess_xx, d2u2 = -hess[i].hess_xx, d2u1 = hess[i].hess_xy;
    const double rhs = d1u1 * d1u1 + d2u2 * d2u2 + 2.0 * d2u1 * d2u1;
    out.rhs[i] = rhs;
    out.residual[i] = std::abs(-lap - rhs);
  }
  return out;
}

std::vector<Vec2> interior_lattice(const BoundaryMesh &mesh, const LatticeSpec &spec, double near_field_factor) {
  if (spec.nx < 1 || spec.ny < 1) throw ArgumentError("lattice needs at least one point per direction");
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  for (const auto &p : mesh.panels()) {
    xmin = std::min(xmin, p.a.x), xmax = std::max(xmax, p.a.x);
    ymin = std::min(ymin, p.a.y), ymax = std::max(ymax, p.a.y);
  }
  std::vector<Vec2> pts;
  for (int j = 0; j < spec.ny; ++j) {
    for (int i = 0; i < spec.nx; ++i) {
      const Vec2 x{xmin + (i + 0.5) * (xmax - xmin) / spec.nx, ymin + (j + 0.5) * (ymax - ymin) / spec.ny};
      if (mesh.admissible(x, near_field_factor)) pts.push_back(x);
    }
  }
  return pts;
}

PressureSample pressure_min(const PressureField &field, const LatticeSpec &lattice) {
  const auto pts = interior_lattice(field.mesh(), lattice, field.near_field_factor);
  if (pts.empty()) throw ArgumentError("pressure_min: no admissible lattice point");
  const auto p = pressure_at(field, pts);
  PressureSample s;
  s.count = pts.size();
  s.min = p[0];
  s.argmin = pts[0];
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < s.min) {
      s.min = p[i];
      s.argmin = pts[i];
    }
    s.max_abs = std::max(s.max_abs, std::abs(p[i]));
  }
  return s;
}

double wall_pressure_integral(const PressureField &field) {
  const BoundaryMesh &mesh = field.mesh();
  double total = 0.0;
  for (std::size_t k = 0; k < mesh.wall_per_side(); ++k) {
    const std::size_t j = mesh.right_begin() + k;
    const double u2 = field.phi.slope[j]; // right wall runs upward
    const double p = -field.phi_t.value[j] - 0.5 * u2 * u2;
    total += p * mesh[j].length;
  }
  return total;
}

double wall_neumann_residual(const PressureField &field, double offset, int samples_per_wall) {
  struct Probe {
    Vec2 x;
    Vec2 n;
  };
  std::vector<Probe> probes;
  for (int i = 0; i < samples_per_wall; ++i) {
    const double s = 0.1 + 0.8 * (i + 0.5) / samples_per_wall;
    probes.push_back({{s, offset}, {0.0, -1.0}});
    probes.push_back({{1.0 - offset, s * 0.8}, {1.0, 0.0}});
    probes.push_back({{offset, s * 0.8}, {-1.0, 0.0}});
  }
  std::vector<Vec2> pts;
  for (const auto &p : probes) pts.push_back(p.x);
  const auto phi = eval_interior_full(field.mesh(), field.phi, pts, field.near_field_factor);
  const auto phit = eval_interior_full(field.mesh(), field.phi_t, pts, field.near_field_factor);
  double worst = 0.0, gmax = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    // grad p = -grad phi_t - H(phi) grad phi
    const Vec2 g = phi[i].gradient;
    const double hxx = phi[i].hess_xx, hxy = phi[i].hess_xy;
    const Vec2 hg{hxx * g.x + hxy * g.y, hxy * g.x - hxx * g.y};
    const Vec2 gp = -phit[i].gradient - hg;
    worst = std::max(worst, std::abs(dot(gp, probes[i].n)));
    gmax = std::max(gmax, norm(gp));
  }
  return gmax > 0.0 ? worst / gmax : 0.0;
}

} // namespace fsb
