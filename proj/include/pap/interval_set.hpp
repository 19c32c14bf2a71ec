#pragma once

#include <utility>
#include <vector>

#include "pap/scalar.hpp"

namespace pap {

/// Half-open interval [a, b) with exact endpoints, a < b.
struct Interval {
  Scalar a;
  Scalar b;

  Scalar length() const { return b - a; }
  bool operator==(const Interval& o) const { return a == o.a && b == o.b; }
};

/// Finite union of disjoint, sorted half-open subintervals of [0, 1).
/// Canonical form: endpoints strictly increasing, touching intervals merged.
class IntervalSet {
public:
  IntervalSet() = default;

  /// Builds the canonical form of an arbitrary interval list (overlaps and
  /// touching pieces merged, empty pieces dropped).
  static IntervalSet from_intervals(std::vector<Interval> parts);
  static IntervalSet full() { return from_intervals({{Scalar(0), Scalar(1)}}); }
  static IntervalSet empty_set() { return IntervalSet(); }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  size_t component_count() const { return parts_.size(); }

  Scalar total_length() const;
  bool contains(const Scalar& x) const;

  IntervalSet intersect(const Interval& window) const;
  IntervalSet unite(const IntervalSet& other) const;
  /// Complement within [0, 1).
  IntervalSet complement() const;
  /// Translates every component by t; caller guarantees the result stays in [0, 1).
  IntervalSet translate(const Scalar& t) const;

  /// Exact inclusion test (this subset-of other).
  bool subset_of(const IntervalSet& other) const;

  bool operator==(const IntervalSet& o) const { return parts_ == o.parts_; }

private:
  std::vector<Interval> parts_;
};

}  // namespace pap
