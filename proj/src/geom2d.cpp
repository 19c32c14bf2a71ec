#include "pap/geom2d.hpp"

#include <algorithm>

namespace pap {

mpq_class cross(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

namespace {

// Drops consecutive duplicates and collinear middle vertices; returns the
// cleaned ring (orientation untouched).
std::vector<Vec2> clean_ring(std::vector<Vec2> v) {
  std::vector<Vec2> out;
  for (auto& p : v) {
    if (out.empty() || !(out.back() == p)) out.push_back(std::move(p));
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  if (out.size() < 3) return out;
  std::vector<Vec2> slim;
  size_t n = out.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& prev = out[(i + n - 1) % n];
    const Vec2& cur = out[i];
    const Vec2& next = out[(i + 1) % n];
    if (sgn(cross(prev, cur, next)) != 0) slim.push_back(cur);
  }
  return slim;
}

mpq_class signed_area2(const std::vector<Vec2>& v) {
  mpq_class s = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return s;
}

}  // namespace

ConvexPoly::ConvexPoly(std::vector<Vec2> vertices) {
  verts_ = clean_ring(std::move(vertices));
  if (verts_.size() < 3) raise(Errc::BadPolygon, "fewer than 3 distinct vertices");
  if (sgn(signed_area2(verts_)) < 0) std::reverse(verts_.begin(), verts_.end());
  size_t n = verts_.size();
  for (size_t i = 0; i < n; ++i) {
    if (sgn(cross(verts_[i], verts_[(i + 1) % n], verts_[(i + 2) % n])) <= 0) {
      raise(Errc::BadPolygon, "vertex chain is not strictly convex");
    }
  }
}

ConvexPoly ConvexPoly::rectangle(const Vec2& lo, const Vec2& hi) {
  if (!(lo.x < hi.x) || !(lo.y < hi.y)) raise(Errc::BadPolygon, "degenerate rectangle");
  return ConvexPoly({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}});
}

mpq_class ConvexPoly::area() const {
  mpq_class a = signed_area2(verts_) / 2;
  return a;
}

bool ConvexPoly::contains(const Vec2& p) const {
  size_t n = verts_.size();
  for (size_t i = 0; i < n; ++i) {
    if (sgn(cross(verts_[i], verts_[(i + 1) % n], p)) < 0) return false;
  }
  return true;
}

std::pair<Vec2, Vec2> ConvexPoly::bounds() const {
  Vec2 lo = verts_[0], hi = verts_[0];
  for (const auto& v : verts_) {
    if (v.x < lo.x) lo.x = v.x;
    if (v.y < lo.y) lo.y = v.y;
    if (v.x > hi.x) hi.x = v.x;
    if (v.y > hi.y) hi.y = v.y;
  }
  return {lo, hi};
}

namespace {

// Clips a ring against the half-plane left of a->b (cross >= 0 kept).
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& ring, const Vec2& a, const Vec2& b) {
  std::vector<Vec2> out;
  size_t n = ring.size();
  if (n == 0) return out;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& cur = ring[i];
    const Vec2& nxt = ring[(i + 1) % n];
    mpq_class side_cur = cross(a, b, cur);
    mpq_class side_nxt = cross(a, b, nxt);
    int sc = sgn(side_cur), sn = sgn(side_nxt);
    if (sc >= 0) out.push_back(cur);
    if ((sc > 0 && sn < 0) || (sc < 0 && sn > 0)) {
      // Exact intersection of segment cur->nxt with the line through a, b.
      mpq_class t = side_cur / (side_cur - side_nxt);
      out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
  return out;
}

std::optional<ConvexPoly> make_if_solid(std::vector<Vec2> ring) {
  ring = clean_ring(std::move(ring));
  if (ring.size() < 3 || sgn(signed_area2(ring)) == 0) return std::nullopt;
  return ConvexPoly(std::move(ring));
}

}  // namespace

std::optional<ConvexPoly> clip(const ConvexPoly& subject, const ConvexPoly& window) {
  std::vector<Vec2> ring = subject.vertices();
  const auto& w = window.vertices();
  for (size_t i = 0; i < w.size() && !ring.empty(); ++i) {
    ring = clip_halfplane(ring, w[i], w[(i + 1) % w.size()]);
  }
  return make_if_solid(std::move(ring));
}

std::vector<ConvexPoly> subtract(const ConvexPoly& p, const ConvexPoly& q) {
  std::vector<ConvexPoly> out;
  std::vector<Vec2> remainder = p.vertices();
  const auto& w = q.vertices();
  for (size_t i = 0; i < w.size() && !remainder.empty(); ++i) {
    const Vec2& a = w[i];
    const Vec2& b = w[(i + 1) % w.size()];
    // The part of the remainder strictly right of edge a->b is outside q for
    // good; the part on the left continues against the next edge.
    std::vector<Vec2> outside = clip_halfplane(remainder, b, a);  // reversed edge keeps the right side
    if (auto piece = make_if_solid(std::move(outside))) out.push_back(std::move(*piece));
    remainder = clip_halfplane(remainder, a, b);
  }
  return out;
}

RotMap::RotMap(mpq_class cos_v, mpq_class sin_v, Vec2 offset)
    : c_(std::move(cos_v)), s_(std::move(sin_v)), t_(std::move(offset)) {
  c_.canonicalize();
  s_.canonicalize();
  if (c_ * c_ + s_ * s_ != 1) {
    raise(Errc::BadScalar, "rotation matrix requires cos^2 + sin^2 = 1 exactly");
  }
}

RotMap RotMap::pythagorean(long m, long n, Vec2 offset) {
  if (m <= n || n < 1) raise(Errc::BadScalar, "pythagorean parameters need m > n >= 1");
  mpq_class m2(m), n2(n);
  mpq_class hyp = m2 * m2 + n2 * n2;
  return RotMap((m2 * m2 - n2 * n2) / hyp, 2 * m2 * n2 / hyp, std::move(offset));
}

RotMap RotMap::about(const Vec2& center, mpq_class cos_v, mpq_class sin_v) {
  RotMap linear(std::move(cos_v), std::move(sin_v), Vec2());
  Vec2 moved = linear.apply(center);
  return RotMap(linear.c_, linear.s_, {center.x - moved.x, center.y - moved.y});
}

Vec2 RotMap::apply(const Vec2& p) const {
  return {c_ * p.x - s_ * p.y + t_.x, s_ * p.x + c_ * p.y + t_.y};
}

ConvexPoly RotMap::apply(const ConvexPoly& p) const {
  std::vector<Vec2> verts;
  verts.reserve(p.size());
  for (const auto& v : p.vertices()) verts.push_back(apply(v));
  return ConvexPoly(std::move(verts));
}

RotMap RotMap::inverse() const {
  // R^T (x - t)
  Vec2 it{-(c_ * t_.x + s_ * t_.y), -(-s_ * t_.x + c_ * t_.y)};
  return RotMap(c_, -s_, std::move(it));
}

}  // namespace pap
