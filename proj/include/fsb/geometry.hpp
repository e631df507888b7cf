#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fsb/vec2.hpp"

namespace fsb {

inline constexpr Vec2 kLeftCorner{0.0, 1.0};
inline constexpr Vec2 kRightCorner{1.0, 1.0};

/// Free surface as an ordered list of markers running from the left pinned
/// corner (0,1) to the right pinned corner (1,1). The constructor enforces
/// pinning and a strictly increasing alpha in [0,1]; leaving the strip
/// 0 <= x1 <= 1 is a breakdown event and is reported by the detectors instead.
class InterfaceCurve {
public:
  InterfaceCurve() = default;
  InterfaceCurve(std::vector<double> alpha, std::vector<Vec2> points);

  /// Uniformly spaced markers on the flat line x2 = 1.
  static InterfaceCurve flat(std::size_t n_markers);

  std::size_t size() const { return points_.size(); }
  std::size_t segments() const { return points_.empty() ? 0 : points_.size() - 1; }
  const std::vector<Vec2> &points() const { return points_; }
  const std::vector<double> &alpha() const { return alpha_; }
  const Vec2 &operator[](std::size_t i) const { return points_[i]; }

  double arclength() const;
  double min_spacing() const;

private:
  std::vector<double> alpha_;
  std::vector<Vec2> points_;
};

enum class BcKind { DirichletSurface, NeumannWall };
enum class Side { Bottom, Right, Surface, Left };

struct Panel {
  Vec2 a;
  Vec2 b;
  Vec2 mid;
  Vec2 tangent;
  Vec2 normal; // outward
  double length = 0.0;
  BcKind kind = BcKind::NeumannWall;
  Side side = Side::Bottom;
};

Panel make_panel(const Vec2 &a, const Vec2 &b, BcKind kind, Side side);

/// Counterclockwise panel decomposition of the fluid boundary:
/// bottom wall, right wall, free surface (right to left), left wall.
class BoundaryMesh {
public:
  BoundaryMesh() = default;
  BoundaryMesh(std::vector<Panel> panels, std::size_t wall_per_side, std::size_t n_surface);

  std::size_t size() const { return panels_.size(); }
  const Panel &operator[](std::size_t i) const { return panels_[i]; }
  const std::vector<Panel> &panels() const { return panels_; }

  std::size_t wall_per_side() const { return wall_per_side_; }
  std::size_t surface_count() const { return n_surface_; }
  std::size_t wall_count() const { return 3 * wall_per_side_; }

  /// Mesh index of the surface panel between markers k and k+1.
  std::size_t surface_index(std::size_t k) const { return 2 * wall_per_side_ + n_surface_ - 1 - k; }
  /// Mesh index of wall panel m, walls ordered bottom, right, left.
  std::size_t wall_index(std::size_t m) const {
    return m < 2 * wall_per_side_ ? m : m + n_surface_;
  }
  std::size_t right_begin() const { return wall_per_side_; }
  std::size_t left_begin() const { return 2 * wall_per_side_ + n_surface_; }

  /// Smallest panel length over the whole boundary.
  double min_panel_length() const;

  /// True when p lies strictly inside the polygon (winding number test).
  bool contains(const Vec2 &p) const;
  /// Inside and at least factor * length away from every panel.
  bool admissible(const Vec2 &p, double near_field_factor) const;

private:
  std::vector<Panel> panels_;
  std::size_t wall_per_side_ = 0;
  std::size_t n_surface_ = 0;
};

BoundaryMesh build_boundary_mesh(const InterfaceCurve &curve, std::size_t wall_panels_per_side);

/// Shoelace area of the closed polygon.
double polygon_area(const BoundaryMesh &mesh);

/// True iff two non-adjacent segments of the marker polyline intersect.
bool self_intersects(const InterfaceCurve &curve);
bool self_intersects(std::span<const Vec2> polyline);

/// True iff segments [p1,p2] and [q1,q2] share at least one point.
bool segments_intersect(const Vec2 &p1, const Vec2 &p2, const Vec2 &q1, const Vec2 &q2);

double point_segment_distance(const Vec2 &p, const Vec2 &a, const Vec2 &b);

} // namespace fsb
