#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "fsb/breakdown.hpp"
#include "fsb/flow.hpp"
#include "fsb/pressure.hpp"

namespace fsb {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// c1 = max(2 |Omega(0)|, 4/3).
double constant_c1(const BoundaryMesh &initial_mesh);
double constant_c1(double initial_area);

struct VirialParts {
  double L = 0.0;
  double volume_part = 0.0; // int_Omega u1 x1 dx
  double wall_part = 0.0;   // int_0^1 x2 u2(t, 1, x2) dx2
};

/// Virial functional from boundary data only:
///   int u1 x1 dx = oint x1 phi n1 ds - int phi dx,
///   int x2 u2 dx2 = phi(1,1) - int_0^1 phi(1, x2) dx2,
/// with the volume integral of a harmonic function reduced by Green's
/// second identity against w = |x|^2 / 4.
VirialParts virial_L(const FlowSolve &solve);

/// int_Omega f dx for harmonic f given its Cauchy data.
double harmonic_volume_integral(const BoundaryMesh &mesh, const CauchyData &f);

/// int_Omega (u1)^2 dx via the Rellich identity with b = (x1, 0):
/// int (u1^2 - u2^2) = 2 oint_Gamma [x1 u1 (u.n) - |u|^2 x1 n1 / 2] ds - int_{x1=1} u2^2 dx2.
double volume_u1_squared(const FlowSolve &solve);

/// int_0^1 u2(t, 1, x2)^2 dx2.
double wall_u2_squared(const FlowSolve &solve);

/// A / (1 - A t / c1); DomainError for t >= c1 / A or A <= 0.
double riccati_envelope(double A, double c1, double t);
/// c1 / A; DomainError for A <= 0.
double blowup_bound(double A, double c1);

/// One row of diagnostics plus the instantaneous terms of the identities.
struct DiagnosticsRecord {
  double t = 0.0;
  double L = 0.0;
  double volume_part = 0.0;
  double wall_part = 0.0;
  double envelope = kNaN;
  double residual_26 = kNaN;
  double residual_27 = kNaN;
  double slack_28 = 0.0;
  double schwarz_vol = 0.0;
  double schwarz_wall = 0.0;
  double riccati_slack = 0.0;
  double p_min = 0.0;
  double wall_p_integral = 0.0;
  double energy = 0.0;
  double area = 0.0;
  double dt = 0.0;

  // instantaneous terms
  double u1_sq = 0.0;      // int (u1)^2 dx
  double wall_u2_sq = 0.0; // int_0^1 u2(1, x2)^2 dx2
  double p_volume = 0.0;   // int p dx
  double p_abs_max = 0.0;  // max |p| over the lattice
  double corner_residual = 0.0;
};

struct RecordOptions {
  LatticeSpec lattice;
  double near_field_factor = kDefaultNearFieldFactor;
  double A = kNaN;  // L(0); envelope only when A > 0
  double c1 = kNaN;
};

/// Everything that needs only the current state: virial parts, pressure
/// sample, boundary-reduced volume integrals and the four inequality slacks.
DiagnosticsRecord make_record(const FlowState &state, const FlowSolve &solve, const RecordOptions &opt);

struct InequalitySlacks {
  double slack_28 = 0.0, scale_28 = 0.0;
  double schwarz_vol = 0.0, scale_vol = 0.0;
  double schwarz_wall = 0.0, scale_wall = 0.0;
  double riccati = 0.0, scale_riccati = 0.0;
};

/// Each slack is (greater side) - (lesser side) of:
///   dL/dt >= int u1^2 + (1/2) int u2^2          (slack = int p dx)
///   (int u1 x1)^2 <= int u1^2 |Omega|
///   (int x2 u2)^2 <= (1/3) int u2^2
///   dL/dt >= L^2 / c1                           (dL/dt from the identities)
InequalitySlacks inequality_checks(const DiagnosticsRecord &r, double c1);

/// |centered d(volume_part)/dt - (int u1^2 + int p - wall_p)| at the middle record.
double identity_residual_26(const DiagnosticsRecord &prev, const DiagnosticsRecord &cur,
                            const DiagnosticsRecord &next);
/// |centered d(wall_part)/dt - (int u2^2 / 2 + wall_p)| at the middle record.
double identity_residual_27(const DiagnosticsRecord &prev, const DiagnosticsRecord &cur,
                            const DiagnosticsRecord &next);
double identity_scale_26(const DiagnosticsRecord &r);
double identity_scale_27(const DiagnosticsRecord &r);

struct DetectorThresholds {
  double collide_tol = 0.1;       // fraction of the initial spacing
  double curvature_factor = 100.0; // curv_max = factor / initial spacing
  double L_max = 1e6;
};

struct BreakdownContext {
  double initial_spacing = 0.0;
  double L = 0.0;
  bool timestep_collapsed = false;
  std::string timestep_detail;
};

/// Largest discrete curvature (turning angle / mean adjacent length) over
/// interior markers.
double max_discrete_curvature(const InterfaceCurve &curve);

/// First matching detector in priority order: bottom_contact,
/// self_intersection, marker_collision, curvature_blowup, timestep_collapse,
/// L_overflow.
std::optional<BreakdownSignal> detect_breakdown(const FlowState &state, const BreakdownContext &ctx,
                                                const DetectorThresholds &thr);

} // namespace fsb
