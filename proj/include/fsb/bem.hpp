#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <span>
#include <vector>

#include "fsb/geometry.hpp"
#include "fsb/kernels.hpp"
#include "fsb/numerics.hpp"

namespace fsb {

/// Per-panel boundary trace (value, at the midpoint), outward normal
/// derivative (flux) and tangential derivative of the trace along the panel
/// direction (slope) of a harmonic function, all in mesh order.
struct CauchyData {
  std::vector<double> value;
  std::vector<double> flux;
  std::vector<double> slope;
  /// true where the value was prescribed (Dirichlet), false where the flux was.
  std::vector<bool> value_prescribed;
  /// Trace at the pinned corners (0,1) and (1,1).
  double left_corner = 0.0;
  double right_corner = 0.0;
  /// Constant absorbed by the bordered collocation system; added back in the
  /// representation formula.
  double offset = 0.0;

  std::size_t size() const { return value.size(); }
};

/// Sum of flux * length and its natural scale sum |flux| * length.
struct FluxBalance {
  double net = 0.0;
  double scale = 0.0;
  bool compatible(double rel_tol = 1e-8) const { return std::abs(net) <= rel_tol * (scale + 1e-30); }
};

FluxBalance flux_balance(const BoundaryMesh &mesh, const CauchyData &data);

/// Dirichlet data on the free surface, indexed left to right.
struct SurfaceTrace {
  std::vector<double> panel_values;
  /// d/ds along the marker direction (left to right).
  std::vector<double> slopes;
  double left_corner = 0.0;
  double right_corner = 0.0;

  /// Exact piecewise-linear trace from values at the markers.
  static SurfaceTrace from_nodes(const BoundaryMesh &mesh, std::span<const double> nodal);
  /// Midpoint values only: slopes and corner values reconstructed by
  /// three-point Lagrange stencils along the surface.
  static SurfaceTrace from_panels(const BoundaryMesh &mesh, std::span<const double> panel_values);
};

/// Direct (Green's identity) collocation solver for the mixed problem with
/// Dirichlet data on the free surface and Neumann data on the walls.
///
/// Flux is piecewise constant, collocation is at panel midpoints with
/// on-boundary coefficient 1/2. The double-layer density is the midpoint
/// value plus a reconstructed tangential slope; the trace jumps only by
/// O(h^2) at panel junctions and corners. The system is bordered with the
/// flux compatibility constraint and one free constant, and every solve
/// conserves volume to round-off. The LU factorization is reused
/// across right-hand sides on the same mesh.
class MixedSolver {
public:
  explicit MixedSolver(BoundaryMesh mesh);
  MixedSolver(BoundaryMesh mesh, kernels::InfluenceMatrices influence);
  ~MixedSolver();
  MixedSolver(MixedSolver &&) noexcept;
  MixedSolver &operator=(MixedSolver &&) noexcept;

  const BoundaryMesh &mesh() const { return mesh_; }
  const kernels::InfluenceMatrices &influence() const { return influence_; }

  /// neumann_on_walls is indexed by wall panel ordered bottom, right, left.
  CauchyData solve(const SurfaceTrace &surface, std::span<const double> neumann_on_walls) const;

  struct Stencil {
    std::vector<std::pair<std::size_t, double>> unknowns; // (mesh index, weight)
    double left_corner_weight = 0.0;
    double right_corner_weight = 0.0;
  };

private:
  BoundaryMesh mesh_;
  kernels::InfluenceMatrices influence_;
  std::vector<Stencil> wall_slope_; // by wall panel, bottom/right/left order
  std::unique_ptr<LuFactorization> lu_;
};

/// Per-panel surface data in marker order; wraps SurfaceTrace::from_panels.
CauchyData solve_mixed_bvp(const BoundaryMesh &mesh, std::span<const double> dirichlet_on_surface,
                           std::span<const double> neumann_on_walls);

inline constexpr double kDefaultNearFieldFactor = 2.0;

struct InteriorValues {
  std::vector<double> values;
  std::vector<Vec2> gradients;
};

/// Representation formula at interior points. Throws NearBoundaryError for a
/// point outside the polygon or closer than near_field_factor * panel length
/// to any panel.
InteriorValues eval_interior(const BoundaryMesh &mesh, const CauchyData &cauchy, std::span<const Vec2> points,
                             double near_field_factor = kDefaultNearFieldFactor);

/// Same, with second derivatives.
std::vector<kernels::PointField> eval_interior_full(const BoundaryMesh &mesh, const CauchyData &cauchy,
                                                    std::span<const Vec2> points,
                                                    double near_field_factor = kDefaultNearFieldFactor);

/// Dirichlet-to-Neumann map with homogeneous wall flux: surface potential
/// per segment (marker order) to surface normal flux (marker order).
std::vector<double> dtn_surface(const BoundaryMesh &mesh, std::span<const double> surface_potential);

/// Surface fluxes of a solve, re-ordered left to right.
std::vector<double> surface_fluxes(const BoundaryMesh &mesh, const CauchyData &data);
/// Surface values of a solve, re-ordered left to right.
std::vector<double> surface_values(const BoundaryMesh &mesh, const CauchyData &data);

/// Derivative weights at x of the quadratic through (x0, x1, x2).
std::array<double, 3> lagrange_derivative_weights(double x0, double x1, double x2, double x);

} // namespace fsb
