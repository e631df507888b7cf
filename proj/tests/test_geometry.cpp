#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fsb/errors.hpp"
#include "fsb/geometry.hpp"

using namespace fsb;

namespace {

InterfaceCurve bump_curve(std::size_t n, double amp) {
  std::vector<double> alpha(n);
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n - 1);
    alpha[i] = x;
    pts[i] = {x, 1.0 + amp * std::sin(std::numbers::pi * x)};
  }
  pts.front() = kLeftCorner;
  pts.back() = kRightCorner;
  return InterfaceCurve(alpha, pts);
}

} // namespace

TEST_SUITE("geometry") {

TEST_CASE("flat curve is pinned and ordered") {
  const auto c = InterfaceCurve::flat(5);
  CHECK(c.size() == 5);
  CHECK(c[0].x == 0.0);
  CHECK(c[0].y == 1.0);
  CHECK(c[4].x == 1.0);
  CHECK(c[4].y == 1.0);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c.alpha()[i] > c.alpha()[i - 1]);
  CHECK(c.arclength() == doctest::Approx(1.0));
}

TEST_CASE("unpinned or unordered curves are rejected") {
  CHECK_THROWS_AS(InterfaceCurve({0.0, 0.5, 1.0}, {{0.0, 0.9}, {0.5, 1.0}, {1.0, 1.0}}), GeometryError);
  CHECK_THROWS_AS(InterfaceCurve({0.0, 0.5, 1.0}, {{0.0, 1.0}, {0.5, 1.0}, {1.0, 1.1}}), GeometryError);
  CHECK_THROWS_AS(InterfaceCurve({0.0, 0.6, 0.6, 1.0}, {{0, 1}, {0.3, 1}, {0.6, 1}, {1, 1}}), GeometryError);
  CHECK_THROWS_AS(InterfaceCurve({0.1, 0.5, 1.0}, {{0, 1}, {0.5, 1}, {1, 1}}), GeometryError);
  CHECK_THROWS_AS(InterfaceCurve({0.0, 1.0}, {{0, 1}, {0.5, 1}, {1, 1}}), GeometryError);
}

TEST_CASE("four markers and four wall panels per side give a 15-panel unit square") {
  const auto mesh = build_boundary_mesh(InterfaceCurve::flat(4), 4);
  CHECK(mesh.size() == 15);
  CHECK(mesh.surface_count() == 3);
  CHECK(mesh.wall_count() == 12);
  CHECK(polygon_area(mesh) == 1.0);
  std::size_t surface = 0;
  for (const auto &p : mesh.panels()) {
    CHECK(norm(p.normal) == doctest::Approx(1.0).epsilon(1e-12));
    if (p.side == Side::Surface) {
      ++surface;
      CHECK(p.kind == BcKind::DirichletSurface);
    } else {
      CHECK(p.kind == BcKind::NeumannWall);
    }
  }
  CHECK(surface == 3);
}

TEST_CASE("panels close up counterclockwise with outward normals") {
  const auto mesh = build_boundary_mesh(bump_curve(17, 0.2), 6);
  for (std::size_t j = 0; j < mesh.size(); ++j) {
    const auto &p = mesh[j];
    const auto &q = mesh[(j + 1) % mesh.size()];
    CHECK(p.b.x == q.a.x);
    CHECK(p.b.y == q.a.y);
    // outward: a point just outside along the normal is not contained
    CHECK_FALSE(mesh.contains(p.mid + 1e-6 * p.normal));
    CHECK(mesh.contains(p.mid - 1e-6 * p.normal));
  }
  CHECK(polygon_area(mesh) > 0.0);
}

TEST_CASE("index maps agree with the panel sides") {
  const auto mesh = build_boundary_mesh(InterfaceCurve::flat(9), 5);
  for (std::size_t k = 0; k < mesh.surface_count(); ++k) {
    const auto &p = mesh[mesh.surface_index(k)];
    CHECK(p.side == Side::Surface);
    CHECK(p.b.x == doctest::Approx(k / 8.0)); // surface runs right to left
  }
  for (std::size_t m = 0; m < mesh.wall_count(); ++m) CHECK(mesh[mesh.wall_index(m)].kind == BcKind::NeumannWall);
  CHECK(mesh[mesh.right_begin()].side == Side::Right);
  CHECK(mesh[mesh.left_begin()].side == Side::Left);
}

TEST_CASE("bump interface area matches the analytic integral") {
  const auto mesh = build_boundary_mesh(bump_curve(64, 0.1), 16);
  // polyline error of the chordal approximation is O(h^2)
  CHECK(polygon_area(mesh) == doctest::Approx(1.0 + 0.2 / std::numbers::pi).epsilon(5e-5));
}

TEST_CASE("half-height domain has area one half") {
  std::vector<Panel> panels;
  const Vec2 v[] = {{0, 0}, {1, 0}, {1, 0.5}, {0, 0.5}};
  for (int i = 0; i < 4; ++i) panels.push_back(make_panel(v[i], v[(i + 1) % 4], BcKind::NeumannWall, Side::Bottom));
  CHECK(polygon_area(BoundaryMesh(panels, 1, 1)) == 0.5);
}

TEST_CASE("self intersection") {
  CHECK_FALSE(self_intersects(InterfaceCurve::flat(10)));
  const std::vector<Vec2> eight{{0, 1}, {0.6, 1.4}, {0.6, 1.0}, {0.3, 1.4}, {1, 1}};
  CHECK(self_intersects(std::span<const Vec2>(eight)));
  CHECK_THROWS_AS(build_boundary_mesh(InterfaceCurve({0, 0.25, 0.5, 0.75, 1}, eight), 4), SelfIntersectionError);

  // nearly coincident markers on a simple curve are not an intersection
  std::vector<Vec2> close{{0, 1}, {0.4, 1.1}, {0.4 + 1e-13, 1.1}, {0.8, 1.05}, {1, 1}};
  CHECK_FALSE(self_intersects(std::span<const Vec2>(close)));
}

TEST_CASE("segment predicates") {
  CHECK(segments_intersect({0, 0}, {1, 1}, {0, 1}, {1, 0}));
  CHECK(segments_intersect({0, 0}, {1, 0}, {1, 0}, {2, 1})); // shared endpoint
  CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  CHECK(segments_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0})); // collinear overlap
  CHECK(point_segment_distance({0.5, 1}, {0, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK(point_segment_distance({2, 0}, {0, 0}, {1, 0}) == doctest::Approx(1.0));
}

TEST_CASE("mesh construction errors") {
  CHECK_THROWS_AS(build_boundary_mesh(InterfaceCurve::flat(5), 3), ArgumentError);
  // marker outside the strip
  CHECK_THROWS_AS(build_boundary_mesh(InterfaceCurve({0, 0.5, 1}, {{0, 1}, {1.2, 1.1}, {1, 1}}), 4),
                  SelfIntersectionError);
  // marker below the bottom
  CHECK_THROWS_AS(build_boundary_mesh(InterfaceCurve({0, 0.5, 1}, {{0, 1}, {0.5, -0.1}, {1, 1}}), 4),
                  SelfIntersectionError);
  // coincident markers give a degenerate panel
  CHECK_THROWS_AS(build_boundary_mesh(InterfaceCurve({0, 0.3, 0.6, 1}, {{0, 1}, {0.5, 1}, {0.5, 1}, {1, 1}}), 4),
                  GeometryError);
}

TEST_CASE("admissibility keeps a band away from the boundary") {
  const auto mesh = build_boundary_mesh(InterfaceCurve::flat(17), 16);
  CHECK(mesh.admissible({0.5, 0.5}, 2.0));
  CHECK_FALSE(mesh.admissible({0.5, 0.99}, 2.0));
  CHECK_FALSE(mesh.admissible({1.5, 0.5}, 2.0));
  CHECK(mesh.min_panel_length() == doctest::Approx(1.0 / 16));
}

}
