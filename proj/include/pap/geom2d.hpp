#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "pap/error.hpp"

namespace pap {

/// Exact rational point/vector in the plane.
struct Vec2 {
  mpq_class x;
  mpq_class y;

  Vec2() : x(0), y(0) {}
  Vec2(mpq_class px, mpq_class py) : x(std::move(px)), y(std::move(py)) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

/// z-component of (b - a) x (c - a); >0 means c lies left of a->b.
mpq_class cross(const Vec2& a, const Vec2& b, const Vec2& c);

/// Strictly convex polygon with counterclockwise rational vertices and
/// positive area. Construction normalizes: consecutive duplicates and
/// collinear vertices are merged, clockwise input is reversed.
class ConvexPoly {
public:
  /// Throws BadPolygon for fewer than 3 effective vertices, zero area, or a
  /// non-convex chain.
  explicit ConvexPoly(std::vector<Vec2> vertices);

  static ConvexPoly rectangle(const Vec2& lo, const Vec2& hi);

  const std::vector<Vec2>& vertices() const { return verts_; }
  size_t size() const { return verts_.size(); }

  /// Shoelace area, exact, positive.
  mpq_class area() const;
  /// Point-in-polygon, boundary counts as inside.
  bool contains(const Vec2& p) const;
  /// Axis-aligned bounds (lo, hi).
  std::pair<Vec2, Vec2> bounds() const;

  bool operator==(const ConvexPoly& o) const { return verts_ == o.verts_; }

private:
  std::vector<Vec2> verts_;
};

/// Exact intersection of two convex polygons (half-plane clipping);
/// nullopt when the intersection has empty interior.
std::optional<ConvexPoly> clip(const ConvexPoly& subject, const ConvexPoly& window);

/// p minus q as a list of interior-disjoint convex pieces (possibly empty,
/// possibly {p}); exact.
std::vector<ConvexPoly> subtract(const ConvexPoly& p, const ConvexPoly& q);

/// Orientation-preserving isometry x -> R x + offset with an exact rational
/// rotation matrix (c, -s; s, c), c^2 + s^2 = 1 (Pythagorean angles or the
/// identity). det = 1 exactly, so areas are preserved exactly.
class RotMap {
public:
  RotMap(mpq_class cos_v, mpq_class sin_v, Vec2 offset);

  static RotMap identity() { return RotMap(1, 0, Vec2()); }
  static RotMap translation(Vec2 offset) { return RotMap(1, 0, std::move(offset)); }
  /// cos = (m^2-n^2)/(m^2+n^2), sin = 2mn/(m^2+n^2) for integers m > n >= 1.
  static RotMap pythagorean(long m, long n, Vec2 offset = Vec2());
  /// Rotation about a fixed center point.
  static RotMap about(const Vec2& center, mpq_class cos_v, mpq_class sin_v);

  const mpq_class& cos_val() const { return c_; }
  const mpq_class& sin_val() const { return s_; }
  const Vec2& offset() const { return t_; }
  bool is_identity() const { return c_ == 1 && s_ == 0 && t_.x == 0 && t_.y == 0; }

  Vec2 apply(const Vec2& p) const;
  ConvexPoly apply(const ConvexPoly& p) const;

  RotMap inverse() const;

private:
  mpq_class c_, s_;
  Vec2 t_;
};

}  // namespace pap
