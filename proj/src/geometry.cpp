#include "fsb/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fsb/errors.hpp"

namespace fsb {

InterfaceCurve::InterfaceCurve(std::vector<double> alpha, std::vector<Vec2> points)
    : alpha_(std::move(alpha)), points_(std::move(points)) {
  if (points_.size() < 2 || alpha_.size() != points_.size())
    throw GeometryError("interface needs at least two markers with matching alpha values");
  if (points_.front() != kLeftCorner || points_.back() != kRightCorner)
    throw GeometryError("interface endpoints must be pinned at (0,1) and (1,1)");
  if (alpha_.front() != 0.0 || alpha_.back() != 1.0)
    throw GeometryError("alpha must run from 0 to 1");
  for (std::size_t i = 1; i < alpha_.size(); ++i)
    if (!(alpha_[i] > alpha_[i - 1]))
      throw GeometryError("alpha must be strictly increasing");
}

InterfaceCurve InterfaceCurve::flat(std::size_t n_markers) {
  if (n_markers < 2) throw ArgumentError("flat interface needs at least two markers");
  std::vector<double> alpha(n_markers);
  std::vector<Vec2> pts(n_markers);
  for (std::size_t i = 0; i < n_markers; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n_markers - 1);
    alpha[i] = s;
    pts[i] = {s, 1.0};
  }
  alpha.back() = 1.0;
  pts.back() = kRightCorner;
  return {std::move(alpha), std::move(pts)};
}

double InterfaceCurve::arclength() const {
  double s = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) s += norm(points_[i] - points_[i - 1]);
  return s;
}

double InterfaceCurve::min_spacing() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < points_.size(); ++i) m = std::min(m, norm(points_[i] - points_[i - 1]));
  return m;
}

Panel make_panel(const Vec2 &a, const Vec2 &b, BcKind kind, Side side) {
  Panel p;
  p.a = a;
  p.b = b;
  p.mid = 0.5 * (a + b);
  p.length = norm(b - a);
  if (!(p.length > 1e-14)) throw GeometryError("degenerate panel (length <= 1e-14)");
  p.tangent = (1.0 / p.length) * (b - a);
  p.normal = {p.tangent.y, -p.tangent.x};
  p.kind = kind;
  p.side = side;
  return p;
}

BoundaryMesh::BoundaryMesh(std::vector<Panel> panels, std::size_t wall_per_side, std::size_t n_surface)
    : panels_(std::move(panels)), wall_per_side_(wall_per_side), n_surface_(n_surface) {
  if (panels_.size() != 3 * wall_per_side_ + n_surface_)
    throw ArgumentError("panel count does not match wall/surface split");
}

double BoundaryMesh::min_panel_length() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto &p : panels_) m = std::min(m, p.length);
  return m;
}

bool BoundaryMesh::contains(const Vec2 &p) const {
  // Crossing number; the polygon is simple so parity equals containment.
  bool inside = false;
  for (const auto &pan : panels_) {
    const Vec2 &a = pan.a;
    const Vec2 &b = pan.b;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xc) inside = !inside;
    }
  }
  return inside;
}

bool BoundaryMesh::admissible(const Vec2 &p, double near_field_factor) const {
  if (!contains(p)) return false;
  for (const auto &pan : panels_)
    if (point_segment_distance(p, pan.a, pan.b) < near_field_factor * pan.length) return false;
  return true;
}

BoundaryMesh build_boundary_mesh(const InterfaceCurve &curve, std::size_t wall_panels_per_side) {
  if (wall_panels_per_side < 4) throw ArgumentError("wall_panels_per_side must be >= 4");
  const auto &pts = curve.points();
  if (pts.size() < 2 || pts.front() != kLeftCorner || pts.back() != kRightCorner)
    throw GeometryError("interface endpoints are not pinned at the corners");
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const Vec2 &p = pts[i];
    if (!(p.x > 0.0 && p.x < 1.0 && p.y > 0.0))
      throw SelfIntersectionError("interface marker " + std::to_string(i) + " touches or leaves the walls");
  }
  if (self_intersects(curve)) throw SelfIntersectionError("interface polyline self-intersects");

  const std::size_t w = wall_panels_per_side;
  const std::size_t ns = curve.segments();
  std::vector<Panel> panels;
  panels.reserve(3 * w + ns);
  const double inv = 1.0 / static_cast<double>(w);
  auto frac = [&](std::size_t i) { return i == w ? 1.0 : static_cast<double>(i) * inv; };
  for (std::size_t i = 0; i < w; ++i)
    panels.push_back(make_panel({frac(i), 0.0}, {frac(i + 1), 0.0}, BcKind::NeumannWall, Side::Bottom));
  for (std::size_t i = 0; i < w; ++i)
    panels.push_back(make_panel({1.0, frac(i)}, {1.0, frac(i + 1)}, BcKind::NeumannWall, Side::Right));
  for (std::size_t k = ns; k-- > 0;)
    panels.push_back(make_panel(pts[k + 1], pts[k], BcKind::DirichletSurface, Side::Surface));
  for (std::size_t i = 0; i < w; ++i)
    panels.push_back(make_panel({0.0, 1.0 - frac(i)}, {0.0, 1.0 - frac(i + 1)}, BcKind::NeumannWall, Side::Left));
  return {std::move(panels), w, ns};
}

double polygon_area(const BoundaryMesh &mesh) {
  // Products split exactly with fma and summed with Neumaier compensation,
  // so a polygon with exactly representable area gets it exactly.
  double sum = 0.0, comp = 0.0;
  auto add = [&](double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  };
  for (const auto &p : mesh.panels()) {
    const double u = p.a.x * p.b.y, v = p.b.x * p.a.y;
    add(u);
    add(-v);
    add(std::fma(p.a.x, p.b.y, -u));
    add(-std::fma(p.b.x, p.a.y, -v));
  }
  return 0.5 * (sum + comp);
}

namespace {

int orientation(const Vec2 &a, const Vec2 &b, const Vec2 &c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(const Vec2 &a, const Vec2 &b, const Vec2 &p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

} // namespace

bool segments_intersect(const Vec2 &p1, const Vec2 &p2, const Vec2 &q1, const Vec2 &q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

bool self_intersects(std::span<const Vec2> pts) {
  const std::size_t nseg = pts.size() < 2 ? 0 : pts.size() - 1;
  for (std::size_t i = 0; i < nseg; ++i) {
    // bounding box of segment i for a cheap reject
    const double xmin = std::min(pts[i].x, pts[i + 1].x), xmax = std::max(pts[i].x, pts[i + 1].x);
    const double ymin = std::min(pts[i].y, pts[i + 1].y), ymax = std::max(pts[i].y, pts[i + 1].y);
    for (std::size_t j = i + 2; j < nseg; ++j) {
      const Vec2 &c = pts[j];
      const Vec2 &d = pts[j + 1];
      if (std::max(c.x, d.x) < xmin || std::min(c.x, d.x) > xmax || std::max(c.y, d.y) < ymin ||
          std::min(c.y, d.y) > ymax)
        continue;
      if (segments_intersect(pts[i], pts[i + 1], c, d)) return true;
    }
  }
  return false;
}

bool self_intersects(const InterfaceCurve &curve) { return self_intersects(std::span<const Vec2>(curve.points())); }

double point_segment_distance(const Vec2 &p, const Vec2 &a, const Vec2 &b) {
  const Vec2 ab = b - a;
  const double len2 = norm2(ab);
  double s = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return norm(p - (a + s * ab));
}

} // namespace fsb
