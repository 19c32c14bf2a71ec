#include "pap/interval_set.hpp"

#include <algorithm>

namespace pap {

IntervalSet IntervalSet::from_intervals(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& iv) { return !(iv.a < iv.b); });
  std::sort(parts.begin(), parts.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  IntervalSet out;
  for (auto& iv : parts) {
    if (!out.parts_.empty() && iv.a <= out.parts_.back().b) {
      if (iv.b > out.parts_.back().b) out.parts_.back().b = iv.b;
    } else {
      out.parts_.push_back(std::move(iv));
    }
  }
  return out;
}

Scalar IntervalSet::total_length() const {
  Scalar sum;
  for (const auto& iv : parts_) sum += iv.length();
  return sum;
}

bool IntervalSet::contains(const Scalar& x) const {
  for (const auto& iv : parts_) {
    if (x < iv.a) return false;
    if (x < iv.b) return true;
  }
  return false;
}

IntervalSet IntervalSet::intersect(const Interval& window) const {
  std::vector<Interval> out;
  for (const auto& iv : parts_) {
    Scalar lo = max(iv.a, window.a);
    Scalar hi = min(iv.b, window.b);
    if (lo < hi) out.push_back({std::move(lo), std::move(hi)});
  }
  IntervalSet r;
  r.parts_ = std::move(out);  // already sorted and disjoint
  return r;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return from_intervals(std::move(all));
}

IntervalSet IntervalSet::complement() const {
  std::vector<Interval> out;
  Scalar cursor(0);
  for (const auto& iv : parts_) {
    if (cursor < iv.a) out.push_back({cursor, iv.a});
    cursor = iv.b;
  }
  if (cursor < Scalar(1)) out.push_back({cursor, Scalar(1)});
  IntervalSet r;
  r.parts_ = std::move(out);
  return r;
}

IntervalSet IntervalSet::translate(const Scalar& t) const {
  IntervalSet r;
  r.parts_.reserve(parts_.size());
  for (const auto& iv : parts_) r.parts_.push_back({iv.a + t, iv.b + t});
  return r;
}

bool IntervalSet::subset_of(const IntervalSet& other) const {
  size_t j = 0;
  for (const auto& iv : parts_) {
    while (j < other.parts_.size() && other.parts_[j].b <= iv.a) ++j;
    if (j == other.parts_.size()) return false;
    if (!(other.parts_[j].a <= iv.a && iv.b <= other.parts_[j].b)) return false;
  }
  return true;
}

}  // namespace pap
