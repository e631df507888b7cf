#include "fsb/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fsb/errors.hpp"
#include "fsb/numerics.hpp"

namespace fsb {

using std::numbers::pi;

ModePotential::ModePotential(std::vector<ModeTerm> terms) : terms_(std::move(terms)) {
  for (const auto &t : terms_)
    if (t.k < 1) throw ArgumentError("mode numbers must be positive integers");
}

double ModePotential::value(const Vec2 &x) const {
  double v = 0.0;
  for (const auto &t : terms_) v += t.amplitude * std::cos(t.k * pi * x.x) * std::cosh(t.k * pi * x.y);
  return v;
}

Vec2 ModePotential::gradient(const Vec2 &x) const {
  Vec2 g;
  for (const auto &t : terms_) {
    const double kp = t.k * pi;
    g.x -= t.amplitude * kp * std::sin(kp * x.x) * std::cosh(kp * x.y);
    g.y += t.amplitude * kp * std::cos(kp * x.x) * std::sinh(kp * x.y);
  }
  return g;
}

std::pair<double, double> ModePotential::hessian(const Vec2 &x) const {
  double xx = 0.0, xy = 0.0;
  for (const auto &t : terms_) {
    const double kp = t.k * pi;
    xx -= t.amplitude * kp * kp * std::cos(kp * x.x) * std::cosh(kp * x.y);
    xy -= t.amplitude * kp * kp * std::sin(kp * x.x) * std::sinh(kp * x.y);
  }
  return {xx, xy};
}

double ModePotential::corner_velocity_left() const {
  double v = 0.0;
  for (const auto &t : terms_) v += t.amplitude * t.k * pi * std::sinh(t.k * pi);
  return v;
}

double ModePotential::corner_velocity_right() const {
  double v = 0.0;
  for (const auto &t : terms_) v += (t.k % 2 ? -1.0 : 1.0) * t.amplitude * t.k * pi * std::sinh(t.k * pi);
  return v;
}

double ModePotential::relative_corner_residual() const {
  double scale = 0.0;
  for (const auto &t : terms_) scale += std::abs(t.amplitude) * t.k * pi * std::sinh(t.k * pi);
  if (scale == 0.0) return 0.0;
  return std::max(std::abs(corner_velocity_left()), std::abs(corner_velocity_right())) / scale;
}

ModePotential ModePotential::scaled(double factor) const {
  auto t = terms_;
  for (auto &term : t) term.amplitude *= factor;
  return ModePotential(std::move(t));
}

void require_corner_compatible(const ModePotential &potential, double tol) {
  const double r = potential.relative_corner_residual();
  if (!(r <= tol))
    throw ArgumentError("initial potential violates the corner conditions u2(0,1) = u2(1,1) = 0 (relative residual " +
                        std::to_string(r) + ")");
}

ModePotential make_reference_data(double amplitude) {
  if (amplitude == 0.0) throw ArgumentError("make_reference_data: amplitude must be nonzero");
  const double a1 = kReferenceSign * amplitude;
  const double a3 = -a1 * std::sinh(pi) / (3.0 * std::sinh(3.0 * pi));
  return ModePotential({{1, a1}, {3, a3}});
}

double initial_A(const ModePotential &potential, int quadrature_order) {
  const auto rule = gauss_legendre(quadrature_order);
  constexpr int kCells = 4;
  const double h = 1.0 / kCells;
  double volume = 0.0;
  // Each cell is split along its diagonal; each triangle is integrated with
  // the collapsed (Duffy) tensor Gauss rule.
  for (int ci = 0; ci < kCells; ++ci) {
    for (int cj = 0; cj < kCells; ++cj) {
      const Vec2 p00{ci * h, cj * h}, p10{(ci + 1) * h, cj * h}, p01{ci * h, (cj + 1) * h},
          p11{(ci + 1) * h, (cj + 1) * h};
      const Vec2 tris[2][3] = {{p00, p10, p11}, {p00, p11, p01}};
      for (const auto &tri : tris) {
        const Vec2 e1 = tri[1] - tri[0], e2 = tri[2] - tri[0];
        const double jac = std::abs(cross(e1, e2));
        for (std::size_t a = 0; a < rule.size(); ++a) {
          const double u = 0.5 * (rule.nodes[a] + 1.0);
          for (std::size_t b = 0; b < rule.size(); ++b) {
            const double v = 0.5 * (rule.nodes[b] + 1.0);
            // (u, v) in the unit square -> (r, s) = (u (1 - v), u v) in the reference triangle
            const double r = u * (1.0 - v), s = u * v;
            const Vec2 x = tri[0] + r * e1 + s * e2;
            const double w = 0.25 * rule.weights[a] * rule.weights[b] * u * jac;
            volume += w * potential.gradient(x).x * x.x;
          }
        }
      }
    }
  }
  double wall = 0.0;
  for (int c = 0; c < kCells; ++c)
    wall += rule.integrate([&](double y) { return y * potential.gradient({1.0, y}).y; }, c * h, (c + 1) * h);
  return volume + wall;
}

FlowState sample_initial_state(const ModePotential &potential, std::size_t n_markers) {
  if (n_markers < 8) throw ArgumentError("sample_initial_state: need at least 8 markers");
  FlowState s;
  s.t = 0.0;
  s.curve = InterfaceCurve::flat(n_markers);
  s.phi_surface.resize(n_markers);
  for (std::size_t i = 0; i < n_markers; ++i) s.phi_surface[i] = potential.value(s.curve[i]);
  return s;
}

} // namespace fsb
