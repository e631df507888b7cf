#include "fsb/bem.hpp"

#include <cmath>
#include <string>

#include "fsb/errors.hpp"

namespace fsb {

FluxBalance flux_balance(const BoundaryMesh &mesh, const CauchyData &data) {
  FluxBalance fb;
  for (std::size_t j = 0; j < mesh.size(); ++j) {
    fb.net += data.flux[j] * mesh[j].length;
    fb.scale += std::abs(data.flux[j]) * mesh[j].length;
  }
  return fb;
}

std::array<double, 3> lagrange_derivative_weights(double x0, double x1, double x2, double x) {
  const double xs[3] = {x0, x1, x2};
  std::array<double, 3> w{};
  for (int i = 0; i < 3; ++i) {
    double denom = 1.0;
    for (int m = 0; m < 3; ++m)
      if (m != i) denom *= xs[i] - xs[m];
    double num = 0.0;
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      double prod = 1.0;
      for (int m = 0; m < 3; ++m)
        if (m != i && m != j) prod *= x - xs[m];
      num += prod;
    }
    w[i] = num / denom;
  }
  return w;
}

namespace {

double lagrange_value(const double (&xs)[3], const double (&fs)[3], double x) {
  double v = 0.0;
  for (int i = 0; i < 3; ++i) {
    double l = 1.0;
    for (int m = 0; m < 3; ++m)
      if (m != i) l *= (x - xs[m]) / (xs[i] - xs[m]);
    v += l * fs[i];
  }
  return v;
}

// Three-point stencil on a chain of midpoint positions; start/end corners
// optionally take part as an extra known node.
struct ChainStencil {
  int idx[3]; // chain index, or -1 (start corner) / -2 (end corner)
  double w[3];
};

ChainStencil chain_stencil(std::span<const double> pos, std::size_t k, bool start_known, double start_pos,
                           bool end_known, double end_pos) {
  const std::size_t n = pos.size();
  ChainStencil st{};
  int ids[3];
  double xs[3];
  if (k > 0 && k + 1 < n) {
    ids[0] = static_cast<int>(k - 1), ids[1] = static_cast<int>(k), ids[2] = static_cast<int>(k + 1);
  } else if (k == 0) {
    if (start_known) {
      ids[0] = -1, ids[1] = 0, ids[2] = 1;
    } else {
      ids[0] = 0, ids[1] = 1, ids[2] = 2;
    }
  } else {
    if (end_known) {
      ids[0] = static_cast<int>(k - 1), ids[1] = static_cast<int>(k), ids[2] = -2;
    } else {
      ids[0] = static_cast<int>(k - 2), ids[1] = static_cast<int>(k - 1), ids[2] = static_cast<int>(k);
    }
  }
  for (int i = 0; i < 3; ++i) xs[i] = ids[i] == -1 ? start_pos : ids[i] == -2 ? end_pos : pos[ids[i]];
  const auto w = lagrange_derivative_weights(xs[0], xs[1], xs[2], pos[k]);
  for (int i = 0; i < 3; ++i) {
    st.idx[i] = ids[i];
    st.w[i] = w[i];
  }
  return st;
}

} // namespace

SurfaceTrace SurfaceTrace::from_nodes(const BoundaryMesh &mesh, std::span<const double> nodal) {
  const std::size_t ns = mesh.surface_count();
  if (nodal.size() != ns + 1) throw ArgumentError("surface trace: nodal data length must equal marker count");
  SurfaceTrace tr;
  tr.panel_values.resize(ns);
  tr.slopes.resize(ns);
  for (std::size_t k = 0; k < ns; ++k) {
    const double len = mesh[mesh.surface_index(k)].length;
    tr.panel_values[k] = 0.5 * (nodal[k] + nodal[k + 1]);
    tr.slopes[k] = (nodal[k + 1] - nodal[k]) / len;
  }
  tr.left_corner = nodal.front();
  tr.right_corner = nodal.back();
  return tr;
}

SurfaceTrace SurfaceTrace::from_panels(const BoundaryMesh &mesh, std::span<const double> panel_values) {
  const std::size_t ns = mesh.surface_count();
  if (panel_values.size() != ns) throw ArgumentError("surface trace: panel data length does not match surface panel count");
  if (ns < 3) throw ArgumentError("surface trace: need at least three surface panels");
  std::vector<double> pos(ns);
  double s = 0.0;
  for (std::size_t k = 0; k < ns; ++k) {
    const double len = mesh[mesh.surface_index(k)].length;
    pos[k] = s + 0.5 * len;
    s += len;
  }
  SurfaceTrace tr;
  tr.panel_values.assign(panel_values.begin(), panel_values.end());
  tr.slopes.resize(ns);
  for (std::size_t k = 0; k < ns; ++k) {
    const auto st = chain_stencil(pos, k, false, 0.0, false, s);
    double g = 0.0;
    for (int i = 0; i < 3; ++i) g += st.w[i] * panel_values[st.idx[i]];
    tr.slopes[k] = g;
  }
  const double xl[3] = {pos[0], pos[1], pos[2]};
  const double fl[3] = {panel_values[0], panel_values[1], panel_values[2]};
  tr.left_corner = lagrange_value(xl, fl, 0.0);
  const double xr[3] = {pos[ns - 3], pos[ns - 2], pos[ns - 1]};
  const double fr[3] = {panel_values[ns - 3], panel_values[ns - 2], panel_values[ns - 1]};
  tr.right_corner = lagrange_value(xr, fr, s);
  return tr;
}

MixedSolver::MixedSolver(BoundaryMesh mesh) : MixedSolver(mesh, kernels::assemble(mesh)) {}

MixedSolver::~MixedSolver() = default;
MixedSolver::MixedSolver(MixedSolver &&) noexcept = default;
MixedSolver &MixedSolver::operator=(MixedSolver &&) noexcept = default;

MixedSolver::MixedSolver(BoundaryMesh mesh, kernels::InfluenceMatrices influence)
    : mesh_(std::move(mesh)), influence_(std::move(influence)) {
  const std::size_t n = mesh_.size();
  const std::size_t w = mesh_.wall_per_side();

  // Slope stencils along each straight wall. Sides: bottom (0,0)->(1,0),
  // right (1,0)->(1,1) ending at the right corner, left (0,1)->(0,0) starting
  // at the left corner.
  std::vector<double> pos(w);
  for (std::size_t k = 0; k < w; ++k) pos[k] = (static_cast<double>(k) + 0.5) / static_cast<double>(w);
  wall_slope_.resize(3 * w);
  for (std::size_t side = 0; side < 3; ++side) {
    const bool start_known = side == 2;
    const bool end_known = side == 1;
    for (std::size_t k = 0; k < w; ++k) {
      const auto st = chain_stencil(pos, k, start_known, 0.0, end_known, 1.0);
      Stencil &out = wall_slope_[side * w + k];
      for (int i = 0; i < 3; ++i) {
        if (st.idx[i] == -1)
          out.left_corner_weight += st.w[i];
        else if (st.idx[i] == -2)
          out.right_corner_weight += st.w[i];
        else
          out.unknowns.emplace_back(mesh_.wall_index(side * w + static_cast<std::size_t>(st.idx[i])), st.w[i]);
      }
    }
  }

  DenseMatrix a(n + 1);
  const auto &s = influence_.single_layer;
  const auto &d = influence_.double_layer;
  const auto &mom = influence_.double_layer_moment;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (mesh_[j].kind == BcKind::DirichletSurface)
        a(i, j) = -s(i, j);
      else
        a(i, j) += d(i, j) + (i == j ? 0.5 : 0.0);
    }
    for (std::size_t m = 0; m < wall_slope_.size(); ++m) {
      const double mij = mom(i, mesh_.wall_index(m));
      if (mij == 0.0) continue;
      for (const auto &[idx, wt] : wall_slope_[m].unknowns) a(i, idx) += mij * wt;
    }
    a(i, n) = -1.0;
  }
  for (std::size_t j = 0; j < n; ++j)
    if (mesh_[j].kind == BcKind::DirichletSurface) a(n, j) = mesh_[j].length;
  lu_ = std::make_unique<LuFactorization>(std::move(a));
}

CauchyData MixedSolver::solve(const SurfaceTrace &surface, std::span<const double> neumann_on_walls) const {
  const std::size_t n = mesh_.size();
  if (surface.panel_values.size() != mesh_.surface_count() || surface.slopes.size() != mesh_.surface_count())
    throw ArgumentError("solve_mixed_bvp: surface data length does not match surface panel count");
  if (neumann_on_walls.size() != mesh_.wall_count())
    throw ArgumentError("solve_mixed_bvp: wall data length does not match wall panel count");

  CauchyData out;
  out.value.assign(n, 0.0);
  out.flux.assign(n, 0.0);
  out.slope.assign(n, 0.0);
  out.value_prescribed.assign(n, false);
  out.left_corner = surface.left_corner;
  out.right_corner = surface.right_corner;
  for (std::size_t k = 0; k < mesh_.surface_count(); ++k) {
    const auto j = mesh_.surface_index(k);
    out.value[j] = surface.panel_values[k];
    out.slope[j] = -surface.slopes[k]; // mesh runs right to left along the surface
    out.value_prescribed[j] = true;
  }
  for (std::size_t m = 0; m < neumann_on_walls.size(); ++m) out.flux[mesh_.wall_index(m)] = neumann_on_walls[m];

  const auto &s = influence_.single_layer;
  const auto &d = influence_.double_layer;
  const auto &mom = influence_.double_layer_moment;
  std::vector<double> corner_slope(wall_slope_.size());
  for (std::size_t m = 0; m < wall_slope_.size(); ++m)
    corner_slope[m] = wall_slope_[m].left_corner_weight * surface.left_corner +
                      wall_slope_[m].right_corner_weight * surface.right_corner;

  std::vector<double> rhs(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto srow = s.row(i);
    const auto drow = d.row(i);
    const auto mrow = mom.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (out.value_prescribed[j])
        acc -= (drow[j] + (i == j ? 0.5 : 0.0)) * out.value[j] + mrow[j] * out.slope[j];
      else
        acc += srow[j] * out.flux[j];
    }
    for (std::size_t m = 0; m < wall_slope_.size(); ++m) acc -= mrow[mesh_.wall_index(m)] * corner_slope[m];
    rhs[i] = acc;
  }
  double wall_net = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    if (!out.value_prescribed[j]) wall_net += mesh_[j].length * out.flux[j];
  rhs[n] = -wall_net;

  const auto z = lu_->solve(rhs);
  for (std::size_t j = 0; j < n; ++j) {
    if (out.value_prescribed[j])
      out.flux[j] = z[j];
    else
      out.value[j] = z[j];
  }
  out.offset = z[n];
  for (std::size_t m = 0; m < wall_slope_.size(); ++m) {
    double g = corner_slope[m];
    for (const auto &[idx, wt] : wall_slope_[m].unknowns) g += wt * out.value[idx];
    out.slope[mesh_.wall_index(m)] = g;
  }
  return out;
}

CauchyData solve_mixed_bvp(const BoundaryMesh &mesh, std::span<const double> dirichlet_on_surface,
                           std::span<const double> neumann_on_walls) {
  if (dirichlet_on_surface.size() != mesh.surface_count() || neumann_on_walls.size() != mesh.wall_count())
    throw ArgumentError("solve_mixed_bvp: data lengths do not match panel counts");
  return MixedSolver(mesh).solve(SurfaceTrace::from_panels(mesh, dirichlet_on_surface), neumann_on_walls);
}

namespace {

void check_points(const BoundaryMesh &mesh, std::span<const Vec2> points, double factor) {
  for (const auto &p : points)
    if (!mesh.admissible(p, factor))
      throw NearBoundaryError("interior evaluation point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                              ") is outside the domain or inside the near-field band");
}

kernels::LayerDensities densities(const CauchyData &c) { return {c.value, c.flux, c.slope, c.offset}; }

} // namespace

std::vector<kernels::PointField> eval_interior_full(const BoundaryMesh &mesh, const CauchyData &cauchy,
                                                    std::span<const Vec2> points, double near_field_factor) {
  if (cauchy.size() != mesh.size()) throw ArgumentError("eval_interior: Cauchy data does not match mesh");
  check_points(mesh, points, near_field_factor);
  return kernels::evaluate(mesh, densities(cauchy), points, true);
}

InteriorValues eval_interior(const BoundaryMesh &mesh, const CauchyData &cauchy, std::span<const Vec2> points,
                             double near_field_factor) {
  if (cauchy.size() != mesh.size()) throw ArgumentError("eval_interior: Cauchy data does not match mesh");
  check_points(mesh, points, near_field_factor);
  const auto f = kernels::evaluate(mesh, densities(cauchy), points, false);
  InteriorValues out;
  out.values.reserve(f.size());
  out.gradients.reserve(f.size());
  for (const auto &pf : f) {
    out.values.push_back(pf.value);
    out.gradients.push_back(pf.gradient);
  }
  return out;
}

std::vector<double> surface_fluxes(const BoundaryMesh &mesh, const CauchyData &data) {
  std::vector<double> out(mesh.surface_count());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = data.flux[mesh.surface_index(k)];
  return out;
}

std::vector<double> surface_values(const BoundaryMesh &mesh, const CauchyData &data) {
  std::vector<double> out(mesh.surface_count());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = data.value[mesh.surface_index(k)];
  return out;
}

std::vector<double> dtn_surface(const BoundaryMesh &mesh, std::span<const double> surface_potential) {
  const std::vector<double> zero(mesh.wall_count(), 0.0);
  return surface_fluxes(mesh, solve_mixed_bvp(mesh, surface_potential, zero));
}

} // namespace fsb
