#pragma once

#include <vector>

#include "pap/interval_set.hpp"
#include "pap/scalar.hpp"

namespace pap {

/// Piecewise-constant function on [0, 1) with exact breakpoints
/// 0 = x_0 < x_1 < ... < x_k = 1 and value v_i on [x_i, x_{i+1}).
/// Canonical form: adjacent cells with equal values are merged, so the
/// representation is unique and == is semantic equality.
class StepFn {
public:
  /// The zero function.
  StepFn();

  /// Builds and normalizes; breakpoints must be strictly increasing from 0
  /// to 1 with values.size() + 1 == breakpoints.size() (BadPartition else).
  StepFn(std::vector<Scalar> breakpoints, std::vector<Scalar> values);

  static StepFn constant(const Scalar& v);
  /// height * indicator of [a, b), 0 <= a < b <= 1.
  static StepFn indicator(const Scalar& a, const Scalar& b, const Scalar& height = Scalar(1));

  const std::vector<Scalar>& breakpoints() const { return cuts_; }
  const std::vector<Scalar>& values() const { return vals_; }
  size_t cell_count() const { return vals_.size(); }

  const Scalar& evaluate(const Scalar& x) const;

  /// Integral over [0, 1), exact.
  Scalar integrate() const;
  /// Integral of the absolute value, exact.
  Scalar integrate_abs() const;
  /// Essential total variation of the extension-by-zero to an open superset
  /// of [0, 1]: |v_0| + sum |v_i - v_{i-1}| + |v_{k-1}|.
  Scalar variation() const;
  /// L1 norm + variation.
  Scalar bv_norm() const { return integrate_abs() + variation(); }

  StepFn scale(const Scalar& alpha) const;
  StepFn abs() const;

  /// alpha*phi + beta*psi on the common breakpoint refinement, normalized.
  static StepFn linear(const StepFn& phi, const StepFn& psi, const Scalar& alpha,
                       const Scalar& beta);
  StepFn operator+(const StepFn& o) const { return linear(*this, o, Scalar(1), Scalar(1)); }
  StepFn operator-(const StepFn& o) const { return linear(*this, o, Scalar(1), Scalar(-1)); }

  static Scalar l1_distance(const StepFn& phi, const StepFn& psi);

  /// phi * indicator of the complement of N: zero on N, so no jumps interior to N.
  StepFn vanish_on(const IntervalSet& n) const;

  /// True when the function is identically zero on N (the Lemma-4.4 style
  /// hypothesis used by the variation-contraction diagnostics).
  bool vanishes_on(const IntervalSet& n) const;

  bool operator==(const StepFn& o) const { return cuts_ == o.cuts_ && vals_ == o.vals_; }

private:
  std::vector<Scalar> cuts_;  // size k+1, cuts_[0] == 0, cuts_[k] == 1
  std::vector<Scalar> vals_;  // size k

  void normalize();
  friend class Iet;
};

}  // namespace pap
