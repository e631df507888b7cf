#include "fsb/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "fsb/errors.hpp"

namespace fsb {

QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > 64) throw ArgumentError("gauss_legendre: n must be in [1, 64], got " + std::to_string(n));
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // three-term recurrence for P_n(x) and P_n'(x)
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double DenseMatrix::norm_inf() const {
  double m = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (double v : row(i)) s += std::abs(v);
    m = std::max(m, s);
  }
  return m;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    const auto r = row(i);
    for (std::size_t j = 0; j < n_; ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

LuFactorization::LuFactorization(DenseMatrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
  const std::size_t n = lu_.rows();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  const double threshold = 1e-13 * lu_.norm_inf();
  if (n == 0) return;
  if (!(threshold > 0.0)) throw SingularMatrixError("matrix is zero");

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (!(best >= threshold))
      throw SingularMatrixError("pivot " + std::to_string(k) + " below threshold (degenerate mesh?)");
    if (piv != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(piv).begin());
      std::swap(perm_[k], perm_[piv]);
    }
    const double inv = 1.0 / lu_(k, k);
    const auto pivot_row = lu_.row(k);
    const auto m = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n - k > 96)
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(k) + 1; i < m; ++i) {
      auto r = lu_.row(static_cast<std::size_t>(i));
      const double f = r[k] * inv;
      r[k] = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) r[j] -= f * pivot_row[j];
    }
  }
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw ArgumentError("LU solve: rhs length mismatch");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = lu_.row(i);
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= r[j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    const auto r = lu_.row(i);
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= r[j] * x[j];
    x[i] = s / r[i];
  }
  return x;
}

std::vector<double> solve_dense(const DenseSystem &system) {
  const std::size_t n = system.matrix.rows();
  if (system.rhs.size() != n) throw ArgumentError("solve_dense: dimension mismatch");
  for (std::size_t i = 0; i < n; ++i)
    for (double v : system.matrix.row(i))
      if (!std::isfinite(v)) throw ArgumentError("solve_dense: non-finite matrix entry");
  LuFactorization lu(system.matrix);
  auto x = lu.solve(system.rhs);
  const auto ax = system.matrix.multiply(x);
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(ax[i] - system.rhs[i]));
  const double bound = 1e-10 * (system.matrix.norm_inf() * norm_inf(x) + norm_inf(system.rhs));
  if (!(res <= bound)) throw SingularMatrixError("solve_dense: residual bound violated, matrix ill-conditioned");
  return x;
}

// ---------------------------------------------------------------------------

namespace {

using cplx = std::complex<double>;
constexpr double kInv2Pi = 0.5 * std::numbers::inv_pi;
constexpr double kInv4Pi = 0.25 * std::numbers::inv_pi;

cplx to_c(const Vec2 &v) { return {v.x, v.y}; }

// Signed angle from (a - x) to (b - x); zero on the panel itself.
double subtended_angle(const Vec2 &va, const Vec2 &vb) {
  const double c = cross(va, vb);
  const double d = dot(va, vb);
  if (c == 0.0) return 0.0;
  return std::atan2(c, d);
}

double log_antiderivative(double u, double h) {
  const double r2 = u * u + h * h;
  double v = -2.0 * u;
  if (r2 > 0.0) v += u * std::log(r2);
  if (h != 0.0) v += 2.0 * h * std::atan(u / h);
  return v;
}

} // namespace

LayerValues panel_log_integrals(const Vec2 &a, const Vec2 &b, const Vec2 &target) {
  const Vec2 ab = b - a;
  const double len = norm(ab);
  if (!(len > 1e-14)) throw GeometryError("panel_log_integrals: degenerate panel");
  const Vec2 t = (1.0 / len) * ab;
  const Vec2 n{t.y, -t.x};
  const Vec2 r = target - a;
  const double s = dot(r, t);
  double h = dot(r, n);
  if (std::abs(h) < 1e-15 * len) h = 0.0;
  LayerValues out;
  out.single_layer = -kInv4Pi * (log_antiderivative(len - s, h) - log_antiderivative(-s, h));
  out.double_layer = h == 0.0 ? 0.0 : -kInv2Pi * subtended_angle(a - target, b - target);
  if (h != 0.0)
    out.double_layer_moment = (s - 0.5 * len) * out.double_layer +
                              kInv4Pi * h * std::log(norm2(target - b) / norm2(target - a));
  return out;
}

LayerGradients panel_layer_gradients(const Vec2 &a, const Vec2 &b, const Vec2 &target) {
  const Vec2 va = target - a;
  const Vec2 vb = target - b;
  const double len = norm(b - a);
  const cplx t = to_c(b - a) / len;
  // Lambda = log((z-a)/(z-b)) continued off the panel.
  const cplx lambda(0.5 * std::log(norm2(va) / norm2(vb)), -subtended_angle(a - target, b - target));
  const cplx h1 = lambda / t;
  const cplx za = to_c(va), zb = to_c(vb);
  const cplx f1 = 1.0 / zb - 1.0 / za;
  // moment kernel: Re K / (2 pi) with K = -i (z - m) Lambda / t
  const cplx zm = to_c(target - 0.5 * (a + b));
  const cplx dlambda = 1.0 / za - 1.0 / zb;
  const cplx k1 = cplx(0.0, -1.0) / t * (lambda + zm * dlambda);
  LayerGradients g;
  g.single_layer = {-kInv2Pi * h1.real(), kInv2Pi * h1.imag()};
  g.double_layer = {-kInv2Pi * f1.imag(), -kInv2Pi * f1.real()};
  g.double_layer_moment = {kInv2Pi * k1.real(), -kInv2Pi * k1.imag()};
  return g;
}

LayerHessians panel_layer_hessians(const Vec2 &a, const Vec2 &b, const Vec2 &target) {
  const double len = norm(b - a);
  const cplx t = to_c(b - a) / len;
  const cplx za = to_c(target - a), zb = to_c(target - b);
  const cplx h2 = (1.0 / za - 1.0 / zb) / t;
  const cplx f2 = 1.0 / (za * za) - 1.0 / (zb * zb);
  const cplx zm = to_c(target - 0.5 * (a + b));
  const cplx dlambda = 1.0 / za - 1.0 / zb;
  const cplx d2lambda = 1.0 / (zb * zb) - 1.0 / (za * za);
  const cplx k2 = cplx(0.0, -1.0) / t * (2.0 * dlambda + zm * d2lambda);
  LayerHessians out;
  out.moment_xx = kInv2Pi * k2.real();
  out.moment_xy = -kInv2Pi * k2.imag();
  out.single_xx = -kInv2Pi * h2.real();
  out.single_xy = kInv2Pi * h2.imag();
  out.double_xx = -kInv2Pi * f2.imag();
  out.double_xy = -kInv2Pi * f2.real();
  return out;
}

} // namespace fsb
