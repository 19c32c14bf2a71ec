#include "pap/stepfn.hpp"

#include <algorithm>

namespace pap {

StepFn::StepFn() : cuts_{Scalar(0), Scalar(1)}, vals_{Scalar(0)} {}

StepFn::StepFn(std::vector<Scalar> breakpoints, std::vector<Scalar> values)
    : cuts_(std::move(breakpoints)), vals_(std::move(values)) {
  if (cuts_.size() < 2 || vals_.size() + 1 != cuts_.size()) {
    raise(Errc::BadPartition, "breakpoint/value size mismatch");
  }
  if (!(cuts_.front() == Scalar(0)) || !(cuts_.back() == Scalar(1))) {
    raise(Errc::BadPartition, "breakpoints must run from 0 to 1");
  }
  for (size_t i = 0; i + 1 < cuts_.size(); ++i) {
    if (!(cuts_[i] < cuts_[i + 1])) {
      raise(Errc::BadPartition, "breakpoints not strictly increasing at index " + std::to_string(i));
    }
  }
  normalize();
}

StepFn StepFn::constant(const Scalar& v) {
  StepFn f;
  f.vals_[0] = v;
  return f;
}

StepFn StepFn::indicator(const Scalar& a, const Scalar& b, const Scalar& height) {
  if (a.sign() < 0 || !(a < b) || Scalar(1) < b) {
    raise(Errc::BadPartition, "indicator support must satisfy 0 <= a < b <= 1");
  }
  std::vector<Scalar> cuts{Scalar(0)};
  std::vector<Scalar> vals;
  if (a.sign() > 0) {
    cuts.push_back(a);
    vals.push_back(Scalar(0));
  }
  vals.push_back(height);
  if (b < Scalar(1)) {
    cuts.push_back(b);
    vals.push_back(Scalar(0));
  }
  cuts.push_back(Scalar(1));
  return StepFn(std::move(cuts), std::move(vals));
}

void StepFn::normalize() {
  size_t out = 0;
  for (size_t i = 1; i < vals_.size(); ++i) {
    if (vals_[i] == vals_[out]) continue;
    ++out;
    vals_[out] = std::move(vals_[i]);
    cuts_[out] = std::move(cuts_[i]);
  }
  cuts_[out + 1] = Scalar(1);
  vals_.resize(out + 1);
  cuts_.resize(out + 2);
}

const Scalar& StepFn::evaluate(const Scalar& x) const {
  if (x.sign() < 0 || !(x < Scalar(1))) raise(Errc::OutOfDomain, "step function argument outside [0,1)");
  auto it = std::upper_bound(cuts_.begin(), cuts_.end(), x);
  return vals_[static_cast<size_t>(it - cuts_.begin()) - 1];
}

Scalar StepFn::integrate() const {
  Scalar sum;
  for (size_t i = 0; i < vals_.size(); ++i) sum += vals_[i] * (cuts_[i + 1] - cuts_[i]);
  return sum;
}

Scalar StepFn::integrate_abs() const {
  Scalar sum;
  for (size_t i = 0; i < vals_.size(); ++i) sum += vals_[i].abs() * (cuts_[i + 1] - cuts_[i]);
  return sum;
}

Scalar StepFn::variation() const {
  Scalar sum = vals_.front().abs();
  for (size_t i = 1; i < vals_.size(); ++i) sum += (vals_[i] - vals_[i - 1]).abs();
  sum += vals_.back().abs();
  return sum;
}

StepFn StepFn::scale(const Scalar& alpha) const {
  StepFn r = *this;
  for (auto& v : r.vals_) v *= alpha;
  r.normalize();
  return r;
}

StepFn StepFn::abs() const {
  StepFn r = *this;
  for (auto& v : r.vals_) v = v.abs();
  r.normalize();
  return r;
}

StepFn StepFn::linear(const StepFn& phi, const StepFn& psi, const Scalar& alpha,
                      const Scalar& beta) {
  std::vector<Scalar> cuts;
  std::vector<Scalar> vals;
  cuts.reserve(phi.cuts_.size() + psi.cuts_.size());
  vals.reserve(phi.cuts_.size() + psi.cuts_.size());
  size_t i = 0, j = 0;
  cuts.push_back(Scalar(0));
  // Merge-walk over both breakpoint chains; each emitted cell carries the
  // combination of the active values.
  while (i < phi.vals_.size() && j < psi.vals_.size()) {
    vals.push_back(alpha * phi.vals_[i] + beta * psi.vals_[j]);
    const Scalar& pe = phi.cuts_[i + 1];
    const Scalar& qe = psi.cuts_[j + 1];
    Order ord = Scalar::compare(pe, qe);
    if (ord != Order::GT) ++i;
    if (ord != Order::LT) ++j;
    cuts.push_back(ord == Order::GT ? qe : pe);
  }
  StepFn r;
  r.cuts_ = std::move(cuts);
  r.vals_ = std::move(vals);
  r.normalize();
  return r;
}

Scalar StepFn::l1_distance(const StepFn& phi, const StepFn& psi) {
  Scalar sum;
  size_t i = 0, j = 0;
  Scalar left(0);
  while (i < phi.vals_.size() && j < psi.vals_.size()) {
    const Scalar& pe = phi.cuts_[i + 1];
    const Scalar& qe = psi.cuts_[j + 1];
    Order ord = Scalar::compare(pe, qe);
    const Scalar& right = ord == Order::GT ? qe : pe;
    sum += (phi.vals_[i] - psi.vals_[j]).abs() * (right - left);
    left = right;
    if (ord != Order::GT) ++i;
    if (ord != Order::LT) ++j;
  }
  return sum;
}

StepFn StepFn::vanish_on(const IntervalSet& n) const {
  if (n.empty()) return *this;
  std::vector<Scalar> cuts{Scalar(0)};
  std::vector<Scalar> vals;
  for (size_t i = 0; i < vals_.size(); ++i) {
    // Split cell [cuts_[i], cuts_[i+1]) around the parts of n inside it.
    Scalar cursor = cuts_[i];
    const Scalar& end = cuts_[i + 1];
    for (const auto& iv : n.parts()) {
      if (!(iv.a < end) || !(cursor < iv.b)) continue;
      Scalar lo = max(iv.a, cursor);
      Scalar hi = min(iv.b, end);
      if (cursor < lo) {
        vals.push_back(vals_[i]);
        cuts.push_back(lo);
      }
      vals.push_back(Scalar(0));
      cuts.push_back(hi);
      cursor = hi;
    }
    if (cursor < end) {
      vals.push_back(vals_[i]);
      cuts.push_back(end);
    }
  }
  StepFn r;
  r.cuts_ = std::move(cuts);
  r.vals_ = std::move(vals);
  r.normalize();
  return r;
}

bool StepFn::vanishes_on(const IntervalSet& n) const { return vanish_on(n) == *this; }

}  // namespace pap
