#include "pap/itm.hpp"

#include <algorithm>
#include <cmath>

namespace pap {

Itm::Itm(std::vector<Scalar> breakpoints, std::vector<Scalar> translations)
    : cuts_(std::move(breakpoints)), shifts_(std::move(translations)) {
  if (cuts_.size() < 2 || shifts_.size() + 1 != cuts_.size()) {
    raise(Errc::BadPartition, "breakpoint/translation size mismatch");
  }
  if (!(cuts_.front() == Scalar(0)) || !(cuts_.back() == Scalar(1))) {
    raise(Errc::BadPartition, "breakpoints must run from 0 to 1");
  }
  for (size_t i = 0; i + 1 < cuts_.size(); ++i) {
    if (!(cuts_[i] < cuts_[i + 1])) {
      raise(Errc::BadPartition, "breakpoints not strictly increasing at index " + std::to_string(i));
    }
    if ((cuts_[i] + shifts_[i]).sign() < 0 || Scalar(1) < cuts_[i + 1] + shifts_[i]) {
      raise(Errc::OutOfDomain, "image of atom " + std::to_string(i) + " leaves [0,1)");
    }
  }
}

Scalar Itm::evaluate(const Scalar& x) const {
  if (x.sign() < 0 || !(x < Scalar(1))) raise(Errc::OutOfDomain, "point outside [0,1)");
  auto it = std::upper_bound(cuts_.begin(), cuts_.end(), x);
  return x + shifts_[static_cast<size_t>(it - cuts_.begin()) - 1];
}

IntervalSet Itm::image(const IntervalSet& s, size_t component_budget) const {
  std::vector<Interval> pieces;
  for (size_t i = 0; i + 1 < cuts_.size(); ++i) {
    IntervalSet clipped = s.intersect({cuts_[i], cuts_[i + 1]});
    for (const auto& iv : clipped.parts()) {
      pieces.push_back({iv.a + shifts_[i], iv.b + shifts_[i]});
    }
  }
  IntervalSet out = IntervalSet::from_intervals(std::move(pieces));
  if (out.component_count() > component_budget) {
    raise(Errc::ResourceCap,
          "image has " + std::to_string(out.component_count()) + " components, budget " +
              std::to_string(component_budget));
  }
  return out;
}

IntervalSet image_iterate(const Itm& t, size_t n, size_t component_budget) {
  IntervalSet s = IntervalSet::full();
  for (size_t i = 0; i < n; ++i) s = t.image(s, component_budget);
  return s;
}

AttractorResult attractor(const Itm& t, size_t max_depth, size_t component_budget) {
  if (max_depth < 1) raise(Errc::BadPartition, "max_depth must be >= 1");
  AttractorResult r;
  IntervalSet s = IntervalSet::full();
  r.trail.push_back(s);
  for (size_t depth = 0; depth < max_depth; ++depth) {
    IntervalSet next = t.image(s, component_budget);
    if (next == s) {
      r.set = std::move(s);
      r.stabilized_depth = depth;
      return r;
    }
    s = std::move(next);
    r.trail.push_back(s);
  }
  r.set = std::move(s);
  return r;
}

Iet reduce_to_fplus(const Itm& t, size_t max_depth, const Scalar& resolution,
                    size_t component_budget) {
  AttractorResult attr = attractor(t, max_depth, component_budget);
  if (!attr.stabilized()) {
    Scalar len = attr.set.total_length();
    if (len <= resolution) {
      raise(Errc::NullAttractor, "attractor length " + len.str() + " is within resolution " +
                                     resolution.str() + " at depth " + std::to_string(max_depth));
    }
    raise(Errc::NotStabilized, "no stabilization within depth " + std::to_string(max_depth));
  }
  const IntervalSet& xplus = attr.set;
  Scalar total = xplus.total_length();
  if (total.sign() == 0) {
    raise(Errc::NullAttractor, "stabilized attractor has zero length");
  }

  // Accumulated length of X+ strictly left of x, for x in X+; the affine
  // chart xi(x) = acc(x) / total maps X+ onto [0, 1) order-preservingly.
  auto acc = [&xplus](const Scalar& x) {
    Scalar sum;
    for (const auto& iv : xplus.parts()) {
      if (!(x < iv.b)) {
        sum += iv.length();
        continue;
      }
      if (iv.a < x) sum += x - iv.a;
      break;
    }
    return sum;
  };

  // Slice X+ at the atom boundaries. Each slice then lies in one atom and in
  // one component of X+, and its image (a subset of X+, since f(X+) = X+)
  // lies in one component as well, so xi o f o xi^{-1} is a translation on
  // every slice.
  const std::vector<Scalar>& cut_points = t.breakpoints();

  std::vector<Interval> slices;
  for (const auto& iv : xplus.parts()) {
    Scalar lo = iv.a;
    for (const auto& c : cut_points) {
      if (!(lo < c)) continue;
      if (!(c < iv.b)) break;
      slices.push_back({lo, c});
      lo = c;
    }
    slices.push_back({lo, iv.b});
  }

  std::vector<Scalar> cuts{Scalar(0)};
  std::vector<Scalar> shifts;
  Scalar cursor;
  for (const auto& sl : slices) {
    size_t atom = static_cast<size_t>(
        std::upper_bound(t.breakpoints().begin(), t.breakpoints().end(), sl.a) -
        t.breakpoints().begin()) - 1;
    const Scalar& g = t.translations()[atom];
    Scalar shift = (acc(sl.a + g) - acc(sl.a)) / total;
    cursor += sl.length() / total;
    cuts.push_back(cursor);
    shifts.push_back(std::move(shift));
  }
  // Slices partition X+, so cursor ends at exactly 1 and the Iet validation
  // doubles as the m-a.e. invertibility check.
  return Iet(std::move(cuts), std::move(shifts));
}

size_t box_count(const IntervalSet& s, unsigned k) {
  // Boxes [j 2^-k, (j+1) 2^-k); a component [a, b) meets boxes
  // floor(a 2^k) .. ceil(b 2^k) - 1. Components are disjoint and sorted, so
  // overlapping index ranges only happen between neighbours.
  mpz_class count = 0;
  mpz_class prev_last = -1;
  Scalar scale = Scalar(mpq_class(mpz_class(1) << k));
  for (const auto& iv : s.parts()) {
    mpz_class first = (iv.a * scale).floor();
    Scalar top = iv.b * scale;
    mpz_class last = top.floor();
    if (Scalar(mpq_class(last)) == top) last -= 1;  // right end exclusive
    if (first <= prev_last) first = prev_last + 1;
    if (last >= first) count += last - first + 1;
    prev_last = std::max(prev_last, last);
  }
  return static_cast<size_t>(count.get_ui());
}

double box_dim_estimate(const Itm& t, size_t depth, const std::vector<unsigned>& grid_exponents,
                        size_t component_budget) {
  if (grid_exponents.size() < 2) raise(Errc::BadPartition, "need at least two grid exponents");
  AttractorResult attr = attractor(t, depth, component_budget);
  if (attr.stabilized()) {
    raise(Errc::StabilizedAttractor,
          "attractor stabilized at depth " + std::to_string(*attr.stabilized_depth) +
              "; box dimension is 1");
  }
  // Least-squares slope of log N(2^-k) against k log 2.
  double n = static_cast<double>(grid_exponents.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (unsigned k : grid_exponents) {
    double x = static_cast<double>(k) * std::log(2.0);
    double y = std::log(static_cast<double>(box_count(attr.set, k)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace pap
