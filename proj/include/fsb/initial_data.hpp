#pragma once

#include <vector>

#include "fsb/flow.hpp"

namespace fsb {

struct ModeTerm {
  int k = 1;
  double amplitude = 0.0;
};

/// phi0(x) = sum_k a_k cos(k pi x1) cosh(k pi x2) on the unit square. Every
/// term has zero normal derivative on x1 = 0, x1 = 1 and x2 = 0.
class ModePotential {
public:
  ModePotential() = default;
  explicit ModePotential(std::vector<ModeTerm> terms);

  const std::vector<ModeTerm> &terms() const { return terms_; }
  double value(const Vec2 &x) const;
  Vec2 gradient(const Vec2 &x) const;
  /// (d2phi/dx1^2, d2phi/dx1dx2); d2phi/dx2^2 = -xx.
  std::pair<double, double> hessian(const Vec2 &x) const;

  /// u2 at (0,1) and (1,1): sum a_k k pi sinh(k pi) (+/-1)^k.
  double corner_velocity_left() const;
  double corner_velocity_right() const;
  /// Largest corner residual relative to sum |a_k| k pi sinh(k pi).
  double relative_corner_residual() const;

  ModePotential scaled(double factor) const;

private:
  std::vector<ModeTerm> terms_;
};

/// Corner conditions are enforced at load: throws ArgumentError when the
/// relative corner residual exceeds tol.
void require_corner_compatible(const ModePotential &potential, double tol = 1e-12);

/// Sign that makes the reference pair {1, 3} produce A > 0 for positive amplitude.
inline constexpr double kReferenceSign = -1.0;

/// Two-mode reference data, k in {1, 3}, with a_3 chosen to cancel both
/// corner velocities: a_3 = -a_1 sinh(pi) / (3 sinh(3 pi)).
ModePotential make_reference_data(double amplitude);

/// A = int_Omega u1 x1 dx + int_0^1 x2 u2(1, x2) dx2 on the unit square by
/// composite Gauss quadrature on a triangulated square plus 1D Gauss on the wall.
double initial_A(const ModePotential &potential, int quadrature_order);

/// Flat interface with uniform markers and phi sampled from the potential.
FlowState sample_initial_state(const ModePotential &potential, std::size_t n_markers);

} // namespace fsb
