#pragma once

#include <memory>
#include <span>
#include <vector>

#include "fsb/bem.hpp"
#include "fsb/flow.hpp"

namespace fsb {

/// Pressure p = -phi_t - |grad phi|^2 / 2 from the potential and the harmonic
/// time derivative phi_t (Bernoulli gauge with zero constant). phi_t is
/// -|u|^2/2 on the free surface (p = 0 there) and has zero wall flux.
struct PressureField {
  std::shared_ptr<const MixedSolver> solver;
  CauchyData phi;
  CauchyData phi_t;
  double near_field_factor = kDefaultNearFieldFactor;

  const BoundaryMesh &mesh() const { return solver->mesh(); }
};

CauchyData solve_phi_t(const FlowSolve &solve);
PressureField make_pressure_field(const FlowSolve &solve, double near_field_factor = kDefaultNearFieldFactor);

/// Throws NearBoundaryError for inadmissible points.
std::vector<double> pressure_at(const PressureField &field, std::span<const Vec2> points);

struct PoissonCheck {
  /// |-Lap_h p - [(d1u1)^2 + (d2u2)^2 + 2 (d2u1)^2]| per point.
  std::vector<double> residual;
  /// The bracketed right-hand side per point (nonnegative in exact arithmetic).
  std::vector<double> rhs;
};

/// Five-point finite-difference check of -Lap p = (d1u1)^2 + (d2u2)^2 + 2 (d2u1)^2.
PoissonCheck pressure_poisson_residual(const PressureField &field, std::span<const Vec2> points, double h);

struct LatticeSpec {
  int nx = 16;
  int ny = 16;
};

/// Cell-centred lattice over the bounding box of the domain, keeping only
/// admissible points.
std::vector<Vec2> interior_lattice(const BoundaryMesh &mesh, const LatticeSpec &spec, double near_field_factor);

struct PressureSample {
  double min = 0.0;
  Vec2 argmin;
  double max_abs = 0.0;
  std::size_t count = 0;
};

/// Minimum of p over the admissible lattice; ArgumentError if none is admissible.
PressureSample pressure_min(const PressureField &field, const LatticeSpec &lattice);

/// int_0^1 p(t, 1, x2) dx2 from right-wall Cauchy data only:
/// p = -phi_t - (d2 phi)^2 / 2 there since u1 = 0.
double wall_pressure_integral(const PressureField &field);

/// Largest |dp/dn| / max |grad p| over points at distance `offset` from the
/// walls (interior approximation of the wall Neumann condition for p).
double wall_neumann_residual(const PressureField &field, double offset, int samples_per_wall = 16);

} // namespace fsb
