#pragma once

// O(N^2) boundary-integral kernels. Each kernel has a serial reference
// version and an OpenMP version. Results are bit-identical: each output entry
// is computed independently with the same summation order.

#include <span>
#include <vector>

#include "fsb/geometry.hpp"
#include "fsb/numerics.hpp"

namespace fsb::kernels {

/// single_layer(i, j) = int_{panel j} G(mid_i, y) ds_y, double_layer likewise
/// with dG/dn_y, double_layer_moment with dG/dn_y (s - L_j/2). Diagonals of the
/// two double-layer matrices are the flat-panel principal value 0.
struct InfluenceMatrices {
  DenseMatrix single_layer;
  DenseMatrix double_layer;
  DenseMatrix double_layer_moment;
};

InfluenceMatrices assemble_serial(const BoundaryMesh &mesh);
InfluenceMatrices assemble_parallel(const BoundaryMesh &mesh);
InfluenceMatrices assemble(const BoundaryMesh &mesh);

/// Potential u(x) = sum_j S_j(x) flux_j - D_j(x) value_j - M_j(x) slope_j + offset
/// and its derivatives at off-boundary points.
struct PointField {
  double value = 0.0;
  Vec2 gradient;
  double hess_xx = 0.0; // d^2u/dx1^2 (= -d^2u/dx2^2)
  double hess_xy = 0.0;
};

struct LayerDensities {
  std::span<const double> value;
  std::span<const double> flux;
  std::span<const double> slope;
  double offset = 0.0;
};

std::vector<PointField> evaluate_serial(const BoundaryMesh &mesh, const LayerDensities &dens,
                                        std::span<const Vec2> points, bool with_hessian);
std::vector<PointField> evaluate_parallel(const BoundaryMesh &mesh, const LayerDensities &dens,
                                          std::span<const Vec2> points, bool with_hessian);
std::vector<PointField> evaluate(const BoundaryMesh &mesh, const LayerDensities &dens,
                                 std::span<const Vec2> points, bool with_hessian);

/// Number of OpenMP threads available (1 when built without OpenMP).
int max_threads();

} // namespace fsb::kernels
