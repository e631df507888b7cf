#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fsb/bem.hpp"
#include "fsb/errors.hpp"

using namespace fsb;

namespace {

constexpr double pi = std::numbers::pi;

struct Mode {
  double kp;
  double value(Vec2 x) const { return std::cos(kp * x.x) * std::cosh(kp * x.y); }
  Vec2 grad(Vec2 x) const {
    return {-kp * std::sin(kp * x.x) * std::cosh(kp * x.y), kp * std::cos(kp * x.x) * std::sinh(kp * x.y)};
  }
};

BoundaryMesh square(std::size_t n) { return build_boundary_mesh(InterfaceCurve::flat(n + 1), n); }

std::vector<double> surface_midpoint_values(const BoundaryMesh &mesh, const Mode &m) {
  std::vector<double> v(mesh.surface_count());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = m.value(mesh[mesh.surface_index(k)].mid);
  return v;
}

double left_wall_error(std::size_t n, const Mode &m) {
  const auto mesh = square(n);
  const std::vector<double> zero(mesh.wall_count(), 0.0);
  const auto d = solve_mixed_bvp(mesh, surface_midpoint_values(mesh, m), zero);
  double err = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = mesh.left_begin() + k;
    err = std::max(err, std::abs(d.value[j] - m.value(mesh[j].mid)));
    scale = std::max(scale, std::abs(m.value(mesh[j].mid)));
  }
  return err / scale;
}

} // namespace

TEST_SUITE("bem") {

TEST_CASE("constant surface data gives zero flux and constant walls") {
  const auto mesh = square(64);
  const std::vector<double> one(mesh.surface_count(), 1.0), zero(mesh.wall_count(), 0.0);
  const auto d = solve_mixed_bvp(mesh, one, zero);
  double err = 0.0;
  for (std::size_t j = 0; j < mesh.size(); ++j) {
    if (mesh[j].kind == BcKind::DirichletSurface)
      err = std::max(err, std::abs(d.flux[j]));
    else
      err = std::max(err, std::abs(d.value[j] - 1.0));
  }
  CHECK(err <= 1e-8);
  CHECK(std::abs(flux_balance(mesh, d).net) <= 1e-12);
}

TEST_CASE("prescribed data is returned bit-exact") {
  const auto mesh = square(16);
  const Mode m{2 * pi};
  const auto dir = surface_midpoint_values(mesh, m);
  std::vector<double> neu(mesh.wall_count());
  for (std::size_t i = 0; i < neu.size(); ++i) neu[i] = 0.01 * std::sin(double(i));
  // make the Neumann data compatible-free: the offset row absorbs any imbalance
  const auto d = solve_mixed_bvp(mesh, dir, neu);
  for (std::size_t k = 0; k < mesh.surface_count(); ++k) {
    CHECK(d.value[mesh.surface_index(k)] == dir[k]);
    CHECK(d.value_prescribed[mesh.surface_index(k)]);
  }
  for (std::size_t m2 = 0; m2 < mesh.wall_count(); ++m2) {
    CHECK(d.flux[mesh.wall_index(m2)] == neu[m2]);
    CHECK_FALSE(d.value_prescribed[mesh.wall_index(m2)]);
  }
  CHECK(flux_balance(mesh, d).compatible(1e-8));
}

TEST_CASE("mode 2 surface flux within 5e-2 at 128 surface panels") {
  const auto mesh = square(128);
  const Mode m{2 * pi};
  const std::vector<double> zero(mesh.wall_count(), 0.0);
  const auto d = solve_mixed_bvp(mesh, surface_midpoint_values(mesh, m), zero);
  double err = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < mesh.surface_count(); ++k) {
    const auto &p = mesh[mesh.surface_index(k)];
    const double exact = 2 * pi * std::cos(2 * pi * p.mid.x) * std::sinh(2 * pi);
    err = std::max(err, std::abs(d.flux[mesh.surface_index(k)] - exact));
    scale = std::max(scale, std::abs(exact));
  }
  CHECK(err / scale <= 5e-2);
  CHECK(flux_balance(mesh, d).compatible(1e-8));
}

TEST_CASE("mode 1 wall trace converges with order at least one") {
  const Mode m{pi};
  const double e1 = left_wall_error(32, m), e2 = left_wall_error(64, m), e3 = left_wall_error(128, m);
  CHECK(e2 < e1);
  CHECK(e3 < e2);
  CHECK(std::log2(e1 / e2) >= 1.0);
  CHECK(std::log2(e2 / e3) >= 1.0);
}

TEST_CASE("interior evaluation of the constant solution") {
  const auto mesh = square(32);
  const std::vector<double> one(mesh.surface_count(), 1.0), zero(mesh.wall_count(), 0.0);
  const auto d = solve_mixed_bvp(mesh, one, zero);
  const std::vector<Vec2> pts{{0.5, 0.5}, {0.2, 0.7}, {0.8, 0.15}};
  const auto iv = eval_interior(mesh, d, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(std::abs(iv.values[i] - 1.0) <= 1e-8);
    CHECK(norm(iv.gradients[i]) <= 1e-8);
  }
}

TEST_CASE("interior value and gradient of mode 2") {
  const auto mesh = square(64); // 256 panels in total
  const Mode m{2 * pi};
  const std::vector<double> zero(mesh.wall_count(), 0.0);
  const auto d = solve_mixed_bvp(mesh, surface_midpoint_values(mesh, m), zero);
  const std::vector<Vec2> pts{{0.5, 0.5}, {0.25, 0.5}};
  const auto iv = eval_interior(mesh, d, pts);
  CHECK(iv.values[0] == doctest::Approx(-std::cosh(pi)).epsilon(1e-3));
  const Vec2 g = m.grad(pts[1]);
  CHECK(norm(iv.gradients[1] - g) / norm(g) <= 1e-2);

  const auto full = eval_interior_full(mesh, d, pts);
  CHECK(full[0].value == doctest::Approx(iv.values[0]).epsilon(1e-14));
  // hessian of cos(2 pi x) cosh(2 pi y) at (0.5, 0.5): xx = 4 pi^2 cosh(pi), xy = 0
  CHECK(full[0].hess_xx == doctest::Approx(4 * pi * pi * std::cosh(pi)).epsilon(1e-2));
}

TEST_CASE("near-boundary evaluation is refused") {
  const auto mesh = square(16);
  const std::vector<double> one(mesh.surface_count(), 1.0), zero(mesh.wall_count(), 0.0);
  const auto d = solve_mixed_bvp(mesh, one, zero);
  const std::vector<Vec2> near{{0.5, 0.99}};
  CHECK_THROWS_AS(eval_interior(mesh, d, near), NearBoundaryError);
  const std::vector<Vec2> outside{{1.5, 0.5}};
  CHECK_THROWS_AS(eval_interior(mesh, d, outside), NearBoundaryError);
}

TEST_CASE("dirichlet-to-neumann map") {
  const auto mesh = square(64);
  const std::vector<double> c(mesh.surface_count(), 3.0);
  for (double q : dtn_surface(mesh, c)) CHECK(std::abs(q) < 1e-8);

  for (int k : {1, 2}) {
    const Mode m{k * pi};
    const auto q = dtn_surface(mesh, surface_midpoint_values(mesh, m));
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double x = mesh[mesh.surface_index(i)].mid.x;
      const double exact = k * pi * std::cos(k * pi * x) * std::sinh(k * pi);
      err = std::max(err, std::abs(q[i] - exact));
      scale = std::max(scale, std::abs(exact));
    }
    CHECK(err / scale < 5e-3);
  }

  const auto f = surface_midpoint_values(mesh, Mode{pi});
  const auto g = surface_midpoint_values(mesh, Mode{3 * pi});
  std::vector<double> combo(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) combo[i] = 2.0 * f[i] - 0.5 * g[i];
  const auto qf = dtn_surface(mesh, f), qg = dtn_surface(mesh, g), qc = dtn_surface(mesh, combo);
  for (std::size_t i = 0; i < qc.size(); ++i)
    CHECK(qc[i] == doctest::Approx(2.0 * qf[i] - 0.5 * qg[i]).epsilon(1e-9).scale(1.0));
}

TEST_CASE("surface traces from nodes and panels") {
  const auto mesh = square(8);
  std::vector<double> nodal(9);
  for (std::size_t i = 0; i < 9; ++i) nodal[i] = 2.0 + 3.0 * (i / 8.0);
  const auto tr = SurfaceTrace::from_nodes(mesh, nodal);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(tr.slopes[k] == doctest::Approx(3.0));
    CHECK(tr.panel_values[k] == doctest::Approx(2.0 + 3.0 * (k + 0.5) / 8.0));
  }
  CHECK(tr.left_corner == 2.0);
  CHECK(tr.right_corner == 5.0);

  const auto tp = SurfaceTrace::from_panels(mesh, tr.panel_values);
  CHECK(tp.left_corner == doctest::Approx(2.0));
  CHECK(tp.right_corner == doctest::Approx(5.0));
  for (double s : tp.slopes) CHECK(s == doctest::Approx(3.0));

  CHECK_THROWS_AS(SurfaceTrace::from_nodes(mesh, std::vector<double>(5, 0.0)), ArgumentError);
  const std::vector<double> wrong(3, 0.0), zero(mesh.wall_count(), 0.0);
  CHECK_THROWS_AS(solve_mixed_bvp(mesh, wrong, zero), ArgumentError);
}

TEST_CASE("lagrange derivative weights differentiate quadratics exactly") {
  const auto w = lagrange_derivative_weights(0.1, 0.3, 0.7, 0.45);
  auto f = [](double x) { return 2.0 - x + 4.0 * x * x; };
  const double d = w[0] * f(0.1) + w[1] * f(0.3) + w[2] * f(0.7);
  CHECK(d == doctest::Approx(-1.0 + 8.0 * 0.45).epsilon(1e-13));
}

}
