#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fsb/diagnostics.hpp"
#include "fsb/errors.hpp"
#include "fsb/initial_data.hpp"
#include "fsb/numerics.hpp"

using namespace fsb;

namespace {

constexpr double pi = std::numbers::pi;
// Closed forms for the reference data with unit amplitude:
//   V = int u1 x1 dx = sum a_k (-1)^k sinh(k pi) / (k pi), W = A - V.
constexpr double kReferenceV = 3.267624809222202;
constexpr double kReferenceW = 4.474748630406635;

FlowState still_state(std::size_t n) {
  return FlowState{0.0, InterfaceCurve::flat(n), std::vector<double>(n, 0.0)};
}

FlowState curve_state(std::vector<Vec2> pts) {
  std::vector<double> alpha(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) alpha[i] = double(i) / double(pts.size() - 1);
  return FlowState{0.0, InterfaceCurve(alpha, pts), std::vector<double>(pts.size(), 0.0)};
}

template <class F> double square_integral(F &&f) {
  const auto rule = gauss_legendre(20);
  double sum = 0.0;
  const int cells = 4;
  for (int a = 0; a < cells; ++a)
    for (int b = 0; b < cells; ++b)
      sum += rule.integrate(
          [&](double x) {
            return rule.integrate([&](double y) { return f(Vec2{x, y}); }, double(b) / cells, double(b + 1) / cells);
          },
          double(a) / cells, double(a + 1) / cells);
  return sum;
}

} // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("c1 constant") {
  CHECK(constant_c1(1.0) == 2.0);
  CHECK(constant_c1(0.5) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(constant_c1(2.0 / 3.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(constant_c1(build_boundary_mesh(InterfaceCurve::flat(15), 15)) == 2.0);
}

TEST_CASE("riccati envelope and blow-up bound") {
  CHECK(riccati_envelope(1.0, 2.0, 0.0) == 1.0);
  CHECK(riccati_envelope(1.0, 2.0, 1.0) == 2.0);
  CHECK_THROWS_AS(riccati_envelope(1.0, 2.0, 2.0), DomainError);
  CHECK_THROWS_AS(riccati_envelope(0.0, 2.0, 0.1), DomainError);
  CHECK_THROWS_AS(riccati_envelope(-1.0, 2.0, 0.1), DomainError);
  CHECK(blowup_bound(0.5, 2.0) == 4.0);
  CHECK(blowup_bound(2.0, 2.0) == 1.0);
  CHECK_THROWS_AS(blowup_bound(0.0, 2.0), DomainError);
}

TEST_CASE("harmonic volume integrals from boundary data") {
  const auto curve = InterfaceCurve::flat(65);
  MixedSolver solver(build_boundary_mesh(curve, 64));
  const auto &m = solver.mesh();
  std::vector<double> x(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) x[i] = curve[i].x;
  std::vector<double> wall(m.wall_count(), 0.0);
  for (std::size_t i = 0; i < 64; ++i) {
    wall[64 + i] = 1.0;  // right
    wall[128 + i] = -1.0; // left
  }
  const auto f = solver.solve(SurfaceTrace::from_nodes(m, x), wall);
  CHECK(harmonic_volume_integral(m, f) == doctest::Approx(0.5).epsilon(1e-6));

  const std::vector<double> ones(curve.size(), 1.0), zero(m.wall_count(), 0.0);
  const auto c = solver.solve(SurfaceTrace::from_nodes(m, ones), zero);
  CHECK(harmonic_volume_integral(m, c) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("virial functional of still fluid is zero") {
  const auto v = virial_L(solve_flow(still_state(17), 8));
  CHECK(v.L == 0.0);
  CHECK(v.volume_part == 0.0);
  CHECK(v.wall_part == 0.0);
}

TEST_CASE("virial parts of the reference data") {
  const auto solve = solve_flow(sample_initial_state(make_reference_data(1.0), 128), 64);
  const auto v = virial_L(solve);
  CHECK(std::abs(v.volume_part - kReferenceV) / kReferenceV < 1e-3);
  CHECK(std::abs(v.wall_part - kReferenceW) / kReferenceW < 1e-3);
  CHECK(v.L == doctest::Approx(v.volume_part + v.wall_part).epsilon(1e-15));

  const auto flipped = virial_L(solve_flow(sample_initial_state(make_reference_data(-1.0), 128), 64));
  CHECK(flipped.L == -v.L);
}

TEST_CASE("closed forms of the reference virial parts") {
  const auto pot = make_reference_data(1.0);
  double V = 0.0;
  for (const auto &t : pot.terms()) V += t.amplitude * std::pow(-1.0, t.k) * std::sinh(t.k * pi) / (t.k * pi);
  CHECK(V == doctest::Approx(kReferenceV).epsilon(1e-14));
  const double vol = square_integral([&](Vec2 x) { return pot.gradient(x).x * x.x; });
  CHECK(vol == doctest::Approx(kReferenceV).epsilon(1e-12));
}

TEST_CASE("boundary-reduced quadratic integrals match quadrature") {
  const auto pot = make_reference_data(1.0);
  const auto solve = solve_flow(sample_initial_state(pot, 128), 64);
  const double u1sq = square_integral([&](Vec2 x) { return std::pow(pot.gradient(x).x, 2); });
  const double u2sq = gauss_legendre(24).integrate([&](double y) { return std::pow(pot.gradient({1.0, y}).y, 2); }, 0.0, 1.0);
  CHECK(std::abs(volume_u1_squared(solve) - u1sq) / u1sq < 1e-2);
  CHECK(std::abs(wall_u2_squared(solve) - u2sq) / u2sq < 1e-2);
  // both Schwarz inequalities hold for the exact data
  CHECK(kReferenceV * kReferenceV <= u1sq);
  CHECK(kReferenceW * kReferenceW <= u2sq / 3.0);
}

TEST_CASE("inequality slacks of still fluid vanish") {
  const auto s = still_state(17);
  RecordOptions opt;
  opt.A = 0.0;
  opt.c1 = 2.0;
  const auto r = make_record(s, solve_flow(s, 8), opt);
  CHECK(std::isnan(r.envelope));
  const auto q = inequality_checks(r, 2.0);
  CHECK(q.slack_28 == 0.0);
  CHECK(q.schwarz_vol == 0.0);
  CHECK(q.schwarz_wall == 0.0);
  CHECK(q.riccati == 0.0);
  CHECK(r.area == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("reference record at t = 0") {
  const auto s = sample_initial_state(make_reference_data(1.0), 64);
  RecordOptions opt;
  opt.A = 7.742373439628837;
  opt.c1 = 2.0;
  const auto r = make_record(s, solve_flow(s, 32), opt);
  CHECK(r.envelope == opt.A);
  CHECK(r.p_min > 0.0);
  CHECK(r.slack_28 > 0.0);
  CHECK(r.schwarz_vol > 0.0);
  CHECK(r.schwarz_wall > 0.0);
  CHECK(r.riccati_slack > 0.0);
  CHECK(r.energy == doctest::Approx(140.06024390114359).epsilon(5e-3));
}

TEST_CASE("identity residuals") {
  DiagnosticsRecord a, b, c;
  a.t = 0.0;
  b.t = 0.1;
  c.t = 0.2;
  CHECK(identity_residual_26(a, b, c) == 0.0);
  CHECK(identity_residual_27(a, b, c) == 0.0);
  // volume_part' = u1_sq + p_volume - wall_p
  a.volume_part = 1.0;
  c.volume_part = 1.4;
  b.u1_sq = 1.5;
  b.p_volume = 0.7;
  b.wall_p_integral = 0.2;
  CHECK(identity_residual_26(a, b, c) == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
  // wall_part' = wall_u2_sq / 2 + wall_p
  a.wall_part = 0.0;
  c.wall_part = 0.2;
  b.wall_u2_sq = 1.6;
  CHECK(identity_residual_27(a, b, c) == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
  c.t = 0.25;
  CHECK_THROWS_AS(identity_residual_26(a, b, c), ArgumentError);
  CHECK_THROWS_AS(identity_residual_27(a, b, c), ArgumentError);
}

TEST_CASE("discrete curvature") {
  CHECK(max_discrete_curvature(InterfaceCurve::flat(20)) == 0.0);
  // arc of radius R through both corners
  const double R = 2.0, half = std::asin(0.5 / R), cy = 1.0 - std::sqrt(R * R - 0.25);
  std::vector<Vec2> pts;
  for (int i = 0; i <= 40; ++i) {
    const double th = -half + 2.0 * half * i / 40.0;
    pts.push_back({0.5 + R * std::sin(th), cy + R * std::cos(th)});
  }
  pts.front() = kLeftCorner;
  pts.back() = kRightCorner;
  CHECK(max_discrete_curvature(curve_state(pts).curve) == doctest::Approx(1.0 / R).epsilon(1e-3));
}

TEST_CASE("breakdown detectors") {
  const DetectorThresholds thr;
  const auto calm = still_state(11);
  BreakdownContext ctx;
  ctx.initial_spacing = 0.1;
  CHECK_FALSE(detect_breakdown(calm, ctx, thr).has_value());

  auto kind = [&](const FlowState &s, const BreakdownContext &c) {
    const auto sig = detect_breakdown(s, c, thr);
    REQUIRE(sig.has_value());
    return sig->kind;
  };
  auto ctx_L = ctx;
  ctx_L.L = 1e9;
  CHECK(kind(calm, ctx_L) == BreakdownKind::LOverflow);
  auto ctx_dt = ctx;
  ctx_dt.timestep_collapsed = true;
  CHECK(kind(calm, ctx_dt) == BreakdownKind::TimestepCollapse);

  const auto crossing = curve_state({kLeftCorner, {0.6, 0.9}, {0.6, 1.1}, {0.4, 0.9}, {0.4, 1.2}, kRightCorner});
  CHECK(kind(crossing, ctx) == BreakdownKind::SelfIntersection);

  const auto bottom = curve_state({kLeftCorner, {0.3, 0.5}, {0.5, -0.01}, {0.7, 0.5}, kRightCorner});
  CHECK(kind(bottom, ctx) == BreakdownKind::BottomContact);

  const auto close = curve_state({kLeftCorner, {0.3, 1.0}, {0.3005, 1.0}, {0.7, 1.0}, kRightCorner});
  CHECK(kind(close, ctx) == BreakdownKind::MarkerCollision);

  const auto kink = curve_state({kLeftCorner, {0.3, 1.0}, {0.35, 1.0}, {0.4, 1.0}, {0.38, 1.05}, {0.6, 1.0}, kRightCorner});
  auto ctx_k = ctx;
  ctx_k.initial_spacing = 0.05;
  auto thr_k = thr;
  thr_k.collide_tol = 0.01;
  thr_k.curvature_factor = 1.0;
  const auto sig = detect_breakdown(kink, ctx_k, thr_k);
  REQUIRE(sig.has_value());
  CHECK(sig->kind == BreakdownKind::CurvatureBlowup);
}

TEST_CASE("breakdown kind names round-trip") {
  for (auto k : {BreakdownKind::SelfIntersection, BreakdownKind::MarkerCollision, BreakdownKind::TimestepCollapse,
                 BreakdownKind::SolverFailure, BreakdownKind::CurvatureBlowup, BreakdownKind::BottomContact,
                 BreakdownKind::LOverflow}) {
    const auto back = breakdown_kind_from_string(to_string(k));
    REQUIRE(back.has_value());
    CHECK(*back == k);
  }
  CHECK_FALSE(breakdown_kind_from_string("nope").has_value());
  CHECK(to_string(BreakdownKind::LOverflow) == "L_overflow");
}

}
