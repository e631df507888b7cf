#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fsb/vec2.hpp"

namespace fsb {

/// Gauss-Legendre rule on (-1,1).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  /// Integral of f over [lo, hi] after the affine map from (-1,1).
  template <class F> double integrate(F &&f, double lo, double hi) const {
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(mid + half * nodes[i]);
    return half * s;
  }
};

/// Standard n-point Gauss-Legendre rule, 1 <= n <= 64.
QuadratureRule gauss_legendre(int n);

/// Row-major dense square matrix.
class DenseMatrix {
public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t rows() const { return n_; }
  double &operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  double norm_inf() const;
  std::vector<double> multiply(std::span<const double> x) const;

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct DenseSystem {
  DenseMatrix matrix;
  std::vector<double> rhs;
};

/// LU factorization with partial pivoting. Throws SingularMatrixError when a
/// pivot drops below 1e-13 times the largest row norm.
class LuFactorization {
public:
  explicit LuFactorization(DenseMatrix a);

  std::size_t size() const { return lu_.rows(); }
  std::vector<double> solve(std::span<const double> b) const;

private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
};

/// Solves system.matrix * x = system.rhs; checks the backward residual bound
/// ||Ax-b||_inf <= 1e-10 (||A|| ||x|| + ||b||).
std::vector<double> solve_dense(const DenseSystem &system);

double norm_inf(std::span<const double> v);

// ---------------------------------------------------------------------------
// Straight-panel integrals of the 2D Laplace kernel G(x,y) = -ln|x-y| / (2 pi)
// and its normal derivative dG/dn_y, for a panel running from a to b with the
// outward normal on the right of the direction a -> b.

struct LayerValues {
  double single_layer = 0.0; // int G(x,y) ds_y
  double double_layer = 0.0; // int dG/dn_y(x,y) ds_y
  /// int dG/dn_y(x,y) (s - L/2) ds_y: double layer of a unit-slope density
  /// centred on the panel midpoint.
  double double_layer_moment = 0.0;
};

struct LayerGradients {
  Vec2 single_layer;
  Vec2 double_layer;
  Vec2 double_layer_moment;
};

/// Second derivatives of harmonic layer potentials: only (xx, xy) are stored
/// since yy = -xx.
struct LayerHessians {
  double single_xx = 0.0, single_xy = 0.0;
  double double_xx = 0.0, double_xy = 0.0;
  double moment_xx = 0.0, moment_xy = 0.0;
};

/// Closed-form single- and double-layer integrals. A target on the panel
/// gets the analytic log-singular single layer and a zero principal-value
/// double layer.
LayerValues panel_log_integrals(const Vec2 &a, const Vec2 &b, const Vec2 &target);

/// Gradients with respect to the target point; target must not lie on the panel.
LayerGradients panel_layer_gradients(const Vec2 &a, const Vec2 &b, const Vec2 &target);

LayerHessians panel_layer_hessians(const Vec2 &a, const Vec2 &b, const Vec2 &target);

} // namespace fsb
