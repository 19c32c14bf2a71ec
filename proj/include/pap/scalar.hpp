#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pap/error.hpp"

namespace pap {

enum class Order { LT = -1, EQ = 0, GT = 1 };

/// Exact real number of the form a + b*sqrt(d), with a, b rational and d a
/// fixed square-free integer >= 2 (d == 0 and b == 0 for pure rationals).
/// Values from Q embed freely; combining two distinct nonzero d values is a
/// MixedFields error. All operations are pure and exact; comparison, floor
/// and mod_one are decided without floating point.
class Scalar {
public:
  Scalar() : a_(0), b_(0), d_(0) {}
  Scalar(int n) : a_(n), b_(0), d_(0) {}
  Scalar(long n) : a_(n), b_(0), d_(0) {}
  explicit Scalar(mpq_class q) : a_(std::move(q)), b_(0), d_(0) { a_.canonicalize(); }
  Scalar(long num, long den);

  static Scalar quadratic(mpq_class a, mpq_class b, long d);
  static Scalar sqrt_of(long d) { return quadratic(0, 1, d); }

  const mpq_class& rat_part() const { return a_; }
  const mpq_class& quad_part() const { return b_; }
  long field_d() const { return d_; }
  bool is_rational() const { return d_ == 0; }
  bool is_zero() const { return sgn(a_) == 0 && d_ == 0; }
  bool is_integer() const { return d_ == 0 && a_.get_den() == 1; }

  Scalar operator-() const;
  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);
  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
  Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

  /// Exact sign of the real value: -1, 0 or +1.
  int sign() const;

  static Order compare(const Scalar& x, const Scalar& y);

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return compare(x, y) == Order::EQ;
  }
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
    switch (compare(x, y)) {
      case Order::LT: return std::strong_ordering::less;
      case Order::GT: return std::strong_ordering::greater;
      default: return std::strong_ordering::equal;
    }
  }

  /// Largest integer <= value. For quadratic values the integer part is
  /// decided by bisecting a rational bracket of sqrt(d) until both ends of
  /// the induced bracket of the value share a floor; terminates because the
  /// value is irrational whenever b != 0.
  mpz_class floor() const;

  /// x - floor(x), in [0, 1).
  Scalar mod_one() const { return *this - Scalar(mpq_class(floor())); }

  /// Float rendering for diagnostics and plot output only.
  double to_double() const;

  /// Canonical textual form: "p/q" (or "p" when q == 1) for rationals,
  /// "p/q + r/s*sqrt(d)" otherwise; parse() round-trips it bit-exactly.
  std::string str() const;
  static Scalar parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

private:
  mpq_class a_;
  mpq_class b_;
  long d_;

  /// The common field of two operands (0 lifts to anything).
  static long unify(const Scalar& x, const Scalar& y);
};

inline Scalar min(const Scalar& x, const Scalar& y) { return x <= y ? x : y; }
inline Scalar max(const Scalar& x, const Scalar& y) { return x >= y ? x : y; }

}  // namespace pap
