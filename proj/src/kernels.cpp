#include "fsb/kernels.hpp"

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fsb::kernels {

namespace {

void assemble_row(const BoundaryMesh &mesh, std::size_t i, InfluenceMatrices &m) {
  const Vec2 x = mesh[i].mid;
  auto srow = m.single_layer.row(i);
  auto drow = m.double_layer.row(i);
  auto mrow = m.double_layer_moment.row(i);
  for (std::size_t j = 0; j < mesh.size(); ++j) {
    const auto lv = panel_log_integrals(mesh[j].a, mesh[j].b, x);
    srow[j] = lv.single_layer;
    drow[j] = i == j ? 0.0 : lv.double_layer;
    mrow[j] = i == j ? 0.0 : lv.double_layer_moment;
  }
}

PointField evaluate_point(const BoundaryMesh &mesh, const LayerDensities &dens, const Vec2 &x, bool with_hessian) {
  PointField f;
  f.value = dens.offset;
  for (std::size_t j = 0; j < mesh.size(); ++j) {
    const Panel &p = mesh[j];
    const double q = dens.flux[j];
    const double v = dens.value[j];
    const double g = dens.slope[j];
    const auto lv = panel_log_integrals(p.a, p.b, x);
    f.value += lv.single_layer * q - lv.double_layer * v - lv.double_layer_moment * g;
    const auto lg = panel_layer_gradients(p.a, p.b, x);
    f.gradient += q * lg.single_layer - v * lg.double_layer - g * lg.double_layer_moment;
    if (with_hessian) {
      const auto h = panel_layer_hessians(p.a, p.b, x);
      f.hess_xx += q * h.single_xx - v * h.double_xx - g * h.moment_xx;
      f.hess_xy += q * h.single_xy - v * h.double_xy - g * h.moment_xy;
    }
  }
  return f;
}

} // namespace

InfluenceMatrices assemble_serial(const BoundaryMesh &mesh) {
  InfluenceMatrices m{DenseMatrix(mesh.size()), DenseMatrix(mesh.size()), DenseMatrix(mesh.size())};
  for (std::size_t i = 0; i < mesh.size(); ++i) assemble_row(mesh, i, m);
  return m;
}

InfluenceMatrices assemble_parallel(const BoundaryMesh &mesh) {
  InfluenceMatrices m{DenseMatrix(mesh.size()), DenseMatrix(mesh.size()), DenseMatrix(mesh.size())};
  const auto n = static_cast<std::ptrdiff_t>(mesh.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) assemble_row(mesh, static_cast<std::size_t>(i), m);
  return m;
}

InfluenceMatrices assemble(const BoundaryMesh &mesh) {
#ifdef _OPENMP
  return assemble_parallel(mesh);
#else
  return assemble_serial(mesh);
#endif
}

std::vector<PointField> evaluate_serial(const BoundaryMesh &mesh, const LayerDensities &dens,
                                        std::span<const Vec2> points, bool with_hessian) {
  std::vector<PointField> out(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) out[k] = evaluate_point(mesh, dens, points[k], with_hessian);
  return out;
}

std::vector<PointField> evaluate_parallel(const BoundaryMesh &mesh, const LayerDensities &dens,
                                          std::span<const Vec2> points, bool with_hessian) {
  std::vector<PointField> out(points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    out[i] = evaluate_point(mesh, dens, points[i], with_hessian);
  }
  return out;
}

std::vector<PointField> evaluate(const BoundaryMesh &mesh, const LayerDensities &dens,
                                 std::span<const Vec2> points, bool with_hessian) {
#ifdef _OPENMP
  return evaluate_parallel(mesh, dens, points, with_hessian);
#else
  return evaluate_serial(mesh, dens, points, with_hessian);
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

} // namespace fsb::kernels
