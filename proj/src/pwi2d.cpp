#include "pap/pwi2d.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "pap/parallel.hpp"

namespace pap {

namespace {
bool g_parallel_enabled = true;
}

void set_parallel_enabled(bool on) { g_parallel_enabled = on; }
bool parallel_enabled() { return g_parallel_enabled; }

namespace detail {
bool use_openmp(size_t n) { return g_parallel_enabled && n >= 8; }
}  // namespace detail

namespace {

bool boxes_may_overlap(const std::pair<Vec2, Vec2>& a, const std::pair<Vec2, Vec2>& b) {
  return a.first.x < b.second.x && b.first.x < a.second.x && a.first.y < b.second.y &&
         b.first.y < a.second.y;
}

bool interiors_overlap(const ConvexPoly& p, const ConvexPoly& q) {
  if (!boxes_may_overlap(p.bounds(), q.bounds())) return false;
  return clip(p, q).has_value();
}

/// p minus the union of the listed polygons, as interior-disjoint pieces.
std::vector<ConvexPoly> subtract_many(const ConvexPoly& p, const PolySet& cutters) {
  std::vector<ConvexPoly> rem{p};
  for (const auto& q : cutters) {
    auto qb = q.bounds();
    std::vector<ConvexPoly> next;
    for (auto& r : rem) {
      if (!boxes_may_overlap(r.bounds(), qb)) {
        next.push_back(std::move(r));
        continue;
      }
      auto pieces = subtract(r, q);
      next.insert(next.end(), std::make_move_iterator(pieces.begin()),
                  std::make_move_iterator(pieces.end()));
    }
    rem = std::move(next);
    if (rem.empty()) break;
  }
  return rem;
}

PolySet polys_of(const PolyDensity& d) {
  PolySet s;
  s.reserve(d.cell_count());
  for (const auto& c : d.cells()) s.push_back(c.poly);
  return s;
}

}  // namespace

mpq_class polyset_area(const PolySet& s) {
  mpq_class a = 0;
  for (const auto& p : s) a += p.area();
  return a;
}

PwRotation::PwRotation(std::vector<ConvexPoly> atoms, std::vector<RotMap> maps, ConvexPoly ambient)
    : atoms_(std::move(atoms)), maps_(std::move(maps)), ambient_(std::move(ambient)) {
  if (atoms_.empty() || atoms_.size() != maps_.size()) {
    raise(Errc::BadPartition, "atom/map count mismatch");
  }
  for (size_t i = 0; i < atoms_.size(); ++i) {
    for (size_t j = i + 1; j < atoms_.size(); ++j) {
      if (interiors_overlap(atoms_[i], atoms_[j])) {
        raise(Errc::BadPartition,
              "atoms " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
    }
    for (const auto& v : atoms_[i].vertices()) {
      if (!ambient_.contains(v)) {
        raise(Errc::OutOfDomain, "atom " + std::to_string(i) + " leaves the ambient domain");
      }
    }
    ConvexPoly image = maps_[i].apply(atoms_[i]);
    for (const auto& v : image.vertices()) {
      if (!ambient_.contains(v)) {
        raise(Errc::OutOfDomain, "image of atom " + std::to_string(i) + " leaves the ambient domain");
      }
    }
  }
}

bool PwRotation::is_invertible() const {
  PolySet images;
  images.reserve(atoms_.size());
  for (size_t i = 0; i < atoms_.size(); ++i) images.push_back(maps_[i].apply(atoms_[i]));
  for (size_t i = 0; i < images.size(); ++i) {
    for (size_t j = i + 1; j < images.size(); ++j) {
      if (interiors_overlap(images[i], images[j])) return false;
    }
  }
  // Every image must be covered by X up to measure zero.
  for (const auto& img : images) {
    mpq_class covered = 0;
    for (const auto& atom : atoms_) {
      if (auto piece = clip(img, atom)) covered += piece->area();
    }
    if (covered != img.area()) return false;
  }
  return true;
}

PolyDensity::PolyDensity(std::vector<Cell> cells, bool check_disjoint) : cells_(std::move(cells)) {
  std::erase_if(cells_, [](const Cell& c) { return c.value.sign() == 0; });
  if (check_disjoint) validate_disjoint();
}

void PolyDensity::validate_disjoint() const {
  for (size_t i = 0; i < cells_.size(); ++i) {
    for (size_t j = i + 1; j < cells_.size(); ++j) {
      if (interiors_overlap(cells_[i].poly, cells_[j].poly)) {
        raise(Errc::DegenerateArrangement,
              "cells " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
    }
  }
}

PolyDensity PolyDensity::indicator(const ConvexPoly& support, const Scalar& height) {
  return PolyDensity({{support, height}}, false);
}

Scalar PolyDensity::mass() const {
  Scalar m;
  for (const auto& c : cells_) m += c.value * Scalar(mpq_class(c.poly.area()));
  return m;
}

Scalar PolyDensity::mass_abs() const {
  Scalar m;
  for (const auto& c : cells_) m += c.value.abs() * Scalar(mpq_class(c.poly.area()));
  return m;
}

PolyDensity PolyDensity::scale(const Scalar& alpha) const {
  if (alpha.sign() == 0) return PolyDensity();
  std::vector<Cell> out = cells_;
  for (auto& c : out) c.value *= alpha;
  return PolyDensity(std::move(out), false);
}

PolyDensity overlay_add(const PolyDensity& a, const PolyDensity& b, const Scalar& alpha,
                        const Scalar& beta, size_t cell_budget) {
  if (a.is_zero() || alpha.sign() == 0) return b.scale(beta);
  if (b.is_zero() || beta.sign() == 0) return a.scale(alpha);
  PolySet apolys = polys_of(a);
  PolySet bpolys = polys_of(b);
  std::vector<PolyDensity::Cell> out;
  auto push = [&out, cell_budget](ConvexPoly poly, Scalar value) {
    if (value.sign() == 0) return;
    out.push_back({std::move(poly), std::move(value)});
    if (out.size() > cell_budget) {
      raise(Errc::ResourceCap, "overlay exceeded " + std::to_string(cell_budget) + " cells");
    }
  };
  for (const auto& ca : a.cells()) {
    for (auto& piece : subtract_many(ca.poly, bpolys)) push(std::move(piece), alpha * ca.value);
  }
  for (const auto& cb : b.cells()) {
    for (auto& piece : subtract_many(cb.poly, apolys)) push(std::move(piece), beta * cb.value);
  }
  for (const auto& ca : a.cells()) {
    auto cab = ca.poly.bounds();
    for (const auto& cb : b.cells()) {
      if (!boxes_may_overlap(cab, cb.poly.bounds())) continue;
      if (auto piece = clip(ca.poly, cb.poly)) {
        push(std::move(*piece), alpha * ca.value + beta * cb.value);
      }
    }
  }
  return PolyDensity(std::move(out), false);
}

Scalar l1_distance2d(const PolyDensity& a, const PolyDensity& b) {
  PolyDensity diff = overlay_add(a, b, Scalar(1), Scalar(-1));
  return diff.mass_abs();
}

namespace {

struct PushedPieces {
  std::vector<PolyDensity::Cell> mapped;   // branch pushforwards of one cell
  std::vector<PolyDensity::Cell> outside;  // parts in Omega \ X, unchanged
};

PushedPieces push_cell(const PwRotation& f, const PolyDensity::Cell& cell) {
  PushedPieces out;
  auto cb = cell.poly.bounds();
  for (size_t i = 0; i < f.atom_count(); ++i) {
    const ConvexPoly& atom = f.atoms()[i];
    if (!boxes_may_overlap(cb, atom.bounds())) continue;
    if (auto piece = clip(cell.poly, atom)) {
      out.mapped.push_back({f.maps()[i].apply(*piece), cell.value});
    }
  }
  for (auto& piece : subtract_many(cell.poly, f.atoms())) {
    out.outside.push_back({std::move(piece), cell.value});
  }
  return out;
}

/// Folds possibly-overlapping pushforward pieces into one interior-disjoint
/// arrangement; overlapping branches add. The fast path detects the common
/// case (a.e. invertible extension) where the pieces are already disjoint.
PolyDensity assemble(std::vector<PolyDensity::Cell> pieces, size_t cell_budget) {
  if (pieces.size() > cell_budget) {
    raise(Errc::ResourceCap, "pushforward exceeded " + std::to_string(cell_budget) + " cells");
  }
  std::vector<std::pair<Vec2, Vec2>> boxes;
  boxes.reserve(pieces.size());
  for (const auto& p : pieces) boxes.push_back(p.poly.bounds());
  bool disjoint = true;
  for (size_t i = 0; i < pieces.size() && disjoint; ++i) {
    for (size_t j = i + 1; j < pieces.size() && disjoint; ++j) {
      if (!boxes_may_overlap(boxes[i], boxes[j])) continue;
      if (clip(pieces[i].poly, pieces[j].poly)) disjoint = false;
    }
  }
  if (disjoint) return PolyDensity(std::move(pieces), false);
  PolyDensity acc;
  for (auto& p : pieces) {
    acc = overlay_add(acc, PolyDensity({std::move(p)}, false), Scalar(1), Scalar(1), cell_budget);
  }
  return acc;
}

}  // namespace

PolyDensity transfer2d_serial(const PwRotation& f, const PolyDensity& density, size_t cell_budget) {
  std::vector<PolyDensity::Cell> pieces;
  for (const auto& cell : density.cells()) {
    PushedPieces p = push_cell(f, cell);
    pieces.insert(pieces.end(), std::make_move_iterator(p.mapped.begin()),
                  std::make_move_iterator(p.mapped.end()));
    pieces.insert(pieces.end(), std::make_move_iterator(p.outside.begin()),
                  std::make_move_iterator(p.outside.end()));
  }
  return assemble(std::move(pieces), cell_budget);
}

PolyDensity transfer2d(const PwRotation& f, const PolyDensity& density, size_t cell_budget) {
  std::vector<PushedPieces> per_cell(density.cell_count());
  parallel_for(density.cell_count(),
               [&](size_t i) { per_cell[i] = push_cell(f, density.cells()[i]); });
  // Deterministic concatenation in cell order keeps the result bit-identical
  // to the serial reference.
  std::vector<PolyDensity::Cell> pieces;
  for (auto& p : per_cell) {
    pieces.insert(pieces.end(), std::make_move_iterator(p.mapped.begin()),
                  std::make_move_iterator(p.mapped.end()));
    pieces.insert(pieces.end(), std::make_move_iterator(p.outside.begin()),
                  std::make_move_iterator(p.outside.end()));
  }
  return assemble(std::move(pieces), cell_budget);
}

PolyDensity birkhoff2d(const PwRotation& f, const PolyDensity& density, size_t n,
                       size_t cell_budget) {
  if (n == 0) raise(Errc::BadPartition, "birkhoff average needs n >= 1");
  PolyDensity sum = density;
  PolyDensity current = density;
  for (size_t i = 1; i < n; ++i) {
    current = transfer2d(f, current, cell_budget);
    sum = overlay_add(sum, current, Scalar(1), Scalar(1), cell_budget);
  }
  return sum.scale(Scalar(1) / Scalar(static_cast<long>(n)));
}

namespace {

// Canonical supporting line Ax + By = C with coprime integers and a
// sign-normalized normal; identifies collinear edges across cells.
struct LineKey {
  mpz_class a, b, c;
  bool operator<(const LineKey& o) const {
    return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
  }
};

struct EdgeEvent {
  mpq_class t0, t1;  // parameter range along the canonical direction, t0 < t1
  Scalar value;
  bool positive_side;  // cell interior on the A x + B y > C side
};

LineKey canonical_line(const Vec2& p, const Vec2& q, bool& interior_positive) {
  // Normal (-dy, dx) points to the interior (left of p->q, ccw polygons).
  mpq_class a = p.y - q.y;
  mpq_class b = q.x - p.x;
  mpq_class c = a * p.x + b * p.y;
  mpz_class lcm_den = 1;
  for (const mpq_class* v : {&a, &b, &c}) {
    mpz_class den = v->get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
    lcm_den = lcm_den / g * den;
  }
  mpz_class ia = mpz_class(a * lcm_den), ib = mpz_class(b * lcm_den), ic = mpz_class(c * lcm_den);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), ia.get_mpz_t(), ib.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ic.get_mpz_t());
  if (sgn(g) != 0) {
    ia /= g;
    ib /= g;
    ic /= g;
  }
  int lead = sgn(ia) != 0 ? sgn(ia) : sgn(ib);
  interior_positive = lead > 0;
  if (lead < 0) {
    ia = -ia;
    ib = -ib;
    ic = -ic;
  }
  return {std::move(ia), std::move(ib), std::move(ic)};
}

}  // namespace

double Variation2d::total() const {
  double sum = 0;
  for (const auto& s : segments) {
    sum += s.jump.to_double() * std::sqrt(s.sq_length.get_d());
  }
  return sum;
}

std::optional<Scalar> Variation2d::exact_total() const {
  Scalar sum;
  for (const auto& s : segments) {
    // sqrt of the rational squared length must itself be rational.
    mpz_class num = s.sq_length.get_num(), den = s.sq_length.get_den();
    mpz_class rn, rd;
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
      return std::nullopt;
    }
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    sum += s.jump * Scalar(mpq_class(rn, rd));
  }
  return sum;
}

Variation2d variation2d(const PolyDensity& density) {
  density.validate_disjoint();
  std::map<LineKey, std::vector<EdgeEvent>> lines;
  for (const auto& cell : density.cells()) {
    const auto& v = cell.poly.vertices();
    for (size_t i = 0; i < v.size(); ++i) {
      const Vec2& p = v[i];
      const Vec2& q = v[(i + 1) % v.size()];
      bool interior_positive = false;
      LineKey key = canonical_line(p, q, interior_positive);
      // Parameter along the canonical direction (B, -A).
      mpq_class bq(key.b), aq(key.a);
      mpq_class tp = bq * p.x - aq * p.y;
      mpq_class tq = bq * q.x - aq * q.y;
      if (tp > tq) std::swap(tp, tq);
      lines[key].push_back({std::move(tp), std::move(tq), cell.value, interior_positive});
    }
  }
  Variation2d out;
  for (auto& [key, events] : lines) {
    std::vector<mpq_class> ts;
    ts.reserve(events.size() * 2);
    for (const auto& e : events) {
      ts.push_back(e.t0);
      ts.push_back(e.t1);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    mpq_class dir_sq = mpq_class(key.a * key.a + key.b * key.b);
    Scalar prev_jump;
    mpq_class run_sq = 0;
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
      Scalar plus, minus;
      for (const auto& e : events) {
        if (e.t0 <= ts[i] && ts[i + 1] <= e.t1) {
          (e.positive_side ? plus : minus) += e.value;
        }
      }
      Scalar jump = (plus - minus).abs();
      mpq_class dt = ts[i + 1] - ts[i];
      mpq_class seg_sq = dt * dt / dir_sq;
      // Merge contiguous pieces with the same jump; they came from one
      // maximal subsegment split by unrelated endpoints.
      if (jump == prev_jump && sgn(run_sq) != 0) {
        // (sqrt(x) + sqrt(y))^2 = x + y + 2 sqrt(x y); collinear contiguous
        // pieces have proportional squared lengths, so the product is a
        // perfect square and the merged squared length stays rational.
        mpq_class prod = run_sq * seg_sq;
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), mpz_class(prod.get_num()).get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), mpz_class(prod.get_den()).get_mpz_t());
        run_sq += seg_sq + 2 * mpq_class(rn, rd);
        continue;
      }
      if (prev_jump.sign() != 0 && sgn(run_sq) != 0) {
        out.segments.push_back({prev_jump, run_sq});
      }
      prev_jump = std::move(jump);
      run_sq = prev_jump.sign() != 0 ? seg_sq : mpq_class(0);
    }
    if (prev_jump.sign() != 0 && sgn(run_sq) != 0) {
      out.segments.push_back({prev_jump, run_sq});
    }
  }
  return out;
}

Attractor2dResult attractor2d(const PwRotation& f, size_t max_depth, size_t cell_budget) {
  if (max_depth < 1) raise(Errc::BadPartition, "max_depth must be >= 1");
  Attractor2dResult r;
  PolySet s = f.atoms();
  r.area_trail.push_back(polyset_area(s));
  for (size_t depth = 0; depth < max_depth; ++depth) {
    // Images of (s intersect atom), clipped against s so the sequence nests.
    std::vector<PolySet> per_pair(s.size() * f.atom_count());
    parallel_for(per_pair.size(), [&](size_t idx) {
      size_t sheet = idx / f.atom_count();
      size_t atom = idx % f.atom_count();
      auto piece = clip(s[sheet], f.atoms()[atom]);
      if (!piece) return;
      ConvexPoly img = f.maps()[atom].apply(*piece);
      auto ib = img.bounds();
      for (const auto& sheet2 : s) {
        if (!boxes_may_overlap(ib, sheet2.bounds())) continue;
        if (auto frag = clip(img, sheet2)) per_pair[idx].push_back(std::move(*frag));
      }
    });
    // Deduplicate overlaps between branches to keep the set representation
    // interior-disjoint (deterministic order).
    PolySet next;
    for (const auto& frags : per_pair) {
      for (const auto& frag : frags) {
        auto rem = subtract_many(frag, next);
        next.insert(next.end(), std::make_move_iterator(rem.begin()),
                    std::make_move_iterator(rem.end()));
        if (next.size() > cell_budget) {
          raise(Errc::ResourceCap,
                "attractor exceeded " + std::to_string(cell_budget) + " polygons");
        }
      }
    }
    mpq_class next_area = polyset_area(next);
    if (next_area == r.area_trail.back()) {
      r.set = std::move(s);
      r.stabilized_depth = depth;
      return r;
    }
    s = std::move(next);
    r.area_trail.push_back(std::move(next_area));
  }
  r.set = std::move(s);
  return r;
}

}  // namespace pap
