#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "fsb/bem.hpp"
#include "fsb/breakdown.hpp"
#include "fsb/geometry.hpp"

namespace fsb {

/// Full dynamical state: markers on the free surface and the velocity
/// potential sampled at each marker.
struct FlowState {
  double t = 0.0;
  InterfaceCurve curve;
  std::vector<double> phi_surface;

  void validate() const;
};

/// Result of the potential solve on one state: mesh, factorized solver,
/// Cauchy data of phi and the reconstructed surface velocity.
struct FlowSolve {
  std::shared_ptr<const MixedSolver> solver;
  CauchyData phi;
  /// Velocity at surface panel midpoints, marker order.
  std::vector<Vec2> panel_velocity;
  /// Velocity at markers; corner entries are projected to exactly zero.
  std::vector<Vec2> marker_velocity;
  /// Extrapolated corner velocities before projection.
  Vec2 corner_left;
  Vec2 corner_right;
  double max_speed = 0.0;
  /// max corner speed / max speed (0 for still fluid).
  double corner_residual = 0.0;

  const BoundaryMesh &mesh() const { return solver->mesh(); }
};

FlowSolve solve_flow(const FlowState &state, std::size_t wall_panels_per_side);

/// Per-marker velocity with projected corners.
std::vector<Vec2> surface_velocity(const FlowState &state, std::size_t wall_panels_per_side);

struct StateDerivative {
  std::vector<Vec2> marker_velocity;
  std::vector<double> dphi_dt;
  double corner_residual = 0.0;
};

/// Markers move with the fluid and the surface potential follows the
/// zero-pressure Bernoulli condition, dphi/dt = |u|^2 / 2.
StateDerivative state_derivative(const FlowSolve &solve);
StateDerivative state_derivative(const FlowState &state, std::size_t wall_panels_per_side);

/// Right-hand side used by the integrator; replaceable for manufactured tests.
using DerivativeFn = std::function<StateDerivative(const FlowState &)>;

/// Classical four-stage Runge-Kutta step on (markers, phi_surface). Corners
/// are re-pinned after every stage. Geometric or solver failures inside a
/// stage surface as BreakdownError naming the stage.
FlowState rk4_step(const FlowState &state, double dt, const DerivativeFn &rhs);
FlowState rk4_step(const FlowState &state, double dt, std::size_t wall_panels_per_side);

struct TimestepLimits {
  double cfl = 0.5;
  double dt_min = 1e-9;
  double dt_max = 1e-2;
};

/// cfl * min over segments of spacing / (speed + eps), clamped to dt_max.
/// Throws BreakdownError(TimestepCollapse) below dt_min.
double adaptive_dt(const FlowState &state, std::span<const Vec2> marker_velocity, const TimestepLimits &limits);

/// Uniform-in-arclength marker positions; positions, potential and alpha are
/// carried over with monotone piecewise cubic (PCHIP) interpolation.
FlowState redistribute_markers(const FlowState &state);

/// Monotone cubic Hermite interpolant (Fritsch-Carlson slopes).
class Pchip {
public:
  Pchip(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;

private:
  std::vector<double> x_, y_, d_;
};

/// Kinetic energy 1/2 sum value * flux * length.
double kinetic_energy(const BoundaryMesh &mesh, const CauchyData &phi);

} // namespace fsb
