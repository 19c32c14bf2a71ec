#include "pap/scalar.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

namespace pap {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::MixedFields: return "MixedFields";
    case Errc::BadScalar: return "BadScalar";
    case Errc::BadPartition: return "BadPartition";
    case Errc::NotBijective: return "NotBijective";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::ResourceCap: return "ResourceCap";
    case Errc::NoFinitePartition: return "NoFinitePartition";
    case Errc::NotStabilized: return "NotStabilized";
    case Errc::NullAttractor: return "NullAttractor";
    case Errc::StabilizedAttractor: return "StabilizedAttractor";
    case Errc::DegenerateArrangement: return "DegenerateArrangement";
    case Errc::BadPolygon: return "BadPolygon";
    case Errc::BadConfig: return "BadConfig";
    case Errc::IoError: return "IoError";
  }
  return "Error";
}

namespace {

bool square_free(long d) {
  if (d < 2) return false;
  for (long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

}  // namespace

Scalar::Scalar(long num, long den) : a_(num, den), b_(0), d_(0) {
  if (den == 0) raise(Errc::DivisionByZero, "rational with zero denominator");
  a_.canonicalize();
}

Scalar Scalar::quadratic(mpq_class a, mpq_class b, long d) {
  a.canonicalize();
  b.canonicalize();
  Scalar s;
  s.a_ = std::move(a);
  if (sgn(b) == 0) return s;
  if (!square_free(d)) {
    raise(Errc::BadScalar, "field index must be square-free and >= 2, got " + std::to_string(d));
  }
  s.b_ = std::move(b);
  s.d_ = d;
  return s;
}

long Scalar::unify(const Scalar& x, const Scalar& y) {
  if (x.d_ == 0) return y.d_;
  if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
  raise(Errc::MixedFields, "sqrt(" + std::to_string(x.d_) + ") meets sqrt(" + std::to_string(y.d_) + ")");
}

Scalar Scalar::operator-() const {
  Scalar r;
  r.a_ = -a_;
  r.b_ = -b_;
  r.d_ = d_;
  return r;
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  long d = Scalar::unify(x, y);
  Scalar r;
  r.a_ = x.a_ + y.a_;
  r.b_ = x.b_ + y.b_;
  r.d_ = sgn(r.b_) == 0 ? 0 : d;
  return r;
}

Scalar operator-(const Scalar& x, const Scalar& y) {
  long d = Scalar::unify(x, y);
  Scalar r;
  r.a_ = x.a_ - y.a_;
  r.b_ = x.b_ - y.b_;
  r.d_ = sgn(r.b_) == 0 ? 0 : d;
  return r;
}

Scalar operator*(const Scalar& x, const Scalar& y) {
  long d = Scalar::unify(x, y);
  Scalar r;
  r.a_ = x.a_ * y.a_ + x.b_ * y.b_ * d;
  r.b_ = x.a_ * y.b_ + x.b_ * y.a_;
  r.d_ = sgn(r.b_) == 0 ? 0 : d;
  return r;
}

Scalar operator/(const Scalar& x, const Scalar& y) {
  long d = Scalar::unify(x, y);
  if (y.sign() == 0) raise(Errc::DivisionByZero, "division by zero scalar");
  // 1/(a + b*sqrt(d)) = (a - b*sqrt(d)) / (a^2 - b^2 d); the norm is nonzero
  // for nonzero values since sqrt(d) is irrational.
  mpq_class norm = y.a_ * y.a_ - y.b_ * y.b_ * d;
  Scalar inv;
  inv.a_ = y.a_ / norm;
  inv.b_ = -y.b_ / norm;
  inv.d_ = sgn(inv.b_) == 0 ? 0 : d;
  return x * inv;
}

int Scalar::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: |a| vs |b|*sqrt(d) decides; compare squares.
  int sq = cmp(a_ * a_, b_ * b_ * d_);
  if (sq == 0) return 0;  // unreachable for square-free d, kept for safety
  return sa > 0 ? sq : -sq;
}

Order Scalar::compare(const Scalar& x, const Scalar& y) {
  int s = (x - y).sign();
  return s < 0 ? Order::LT : (s > 0 ? Order::GT : Order::EQ);
}

mpz_class Scalar::floor() const {
  if (d_ == 0) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a_.get_num_mpz_t(), a_.get_den_mpz_t());
    return q;
  }
  // Rational bracket lo < sqrt(d) < hi, refined by bisection until the
  // induced bracket of a + b*sqrt(d) pins down the integer part.
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), mpz_class(d_).get_mpz_t());
  mpq_class lo(root), hi(root + 1);
  auto rat_floor = [](const mpq_class& q) {
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return z;
  };
  for (;;) {
    mpq_class vlo = a_ + b_ * (sgn(b_) > 0 ? lo : hi);
    mpq_class vhi = a_ + b_ * (sgn(b_) > 0 ? hi : lo);
    mpz_class flo = rat_floor(vlo);
    if (flo == rat_floor(vhi)) return flo;
    mpq_class mid = (lo + hi) / 2;
    if (cmp(mid * mid, mpq_class(d_)) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

double Scalar::to_double() const {
  double v = a_.get_d();
  if (d_ != 0) v += b_.get_d() * std::sqrt(static_cast<double>(d_));
  return v;
}

namespace {

std::string rat_str(const mpq_class& q) {
  std::ostringstream os;
  os << q.get_num();
  if (q.get_den() != 1) os << '/' << q.get_den();
  return os.str();
}

struct Cursor {
  std::string_view s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat_word(std::string_view w) {
    skip_ws();
    if (s.substr(pos, w.size()) == w) {
      pos += w.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    raise(Errc::BadScalar, msg + " in \"" + std::string(s) + "\" at offset " + std::to_string(pos));
  }

  mpz_class integer() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) fail("expected integer");
    return mpz_class(std::string(s.substr(start, pos - start)));
  }

  mpq_class rational() {
    mpz_class num = integer();
    if (eat('/')) {
      mpz_class den = integer();
      if (den <= 0) fail("denominator must be positive");
      mpq_class q(num, den);
      q.canonicalize();
      return q;
    }
    return mpq_class(num);
  }
};

}  // namespace

std::string Scalar::str() const {
  if (d_ == 0) return rat_str(a_);
  return rat_str(a_) + " + " + rat_str(b_) + "*sqrt(" + std::to_string(d_) + ")";
}

Scalar Scalar::parse(std::string_view text) {
  Cursor c{text};
  c.skip_ws();

  // term := rational ['*' sqrt-part] | sqrt-part ; scalar := term [('+'|'-') term]
  auto parse_term = [&c](mpq_class& rat, mpq_class& coeff, long& d) {
    if (c.eat_word("sqrt")) {
      if (!c.eat('(')) c.fail("expected '(' after sqrt");
      mpz_class dz = c.integer();
      if (!c.eat(')')) c.fail("expected ')'");
      if (!dz.fits_slong_p()) c.fail("field index too large");
      rat = 0;
      coeff = 1;
      d = dz.get_si();
      return;
    }
    mpq_class q = c.rational();
    size_t save = c.pos;
    bool star = c.eat('*');
    if (c.eat_word("sqrt")) {
      if (!c.eat('(')) c.fail("expected '(' after sqrt");
      mpz_class dz = c.integer();
      if (!c.eat(')')) c.fail("expected ')'");
      if (!dz.fits_slong_p()) c.fail("field index too large");
      rat = 0;
      coeff = q;
      d = dz.get_si();
      return;
    }
    if (star) c.pos = save;  // bare '*' not followed by sqrt
    rat = q;
    coeff = 0;
    d = 0;
  };

  mpq_class a, b;
  long d = 0;
  {
    mpq_class rat, coeff;
    long td = 0;
    parse_term(rat, coeff, td);
    a = rat;
    b = coeff;
    d = td;
  }
  c.skip_ws();
  if (c.pos < c.s.size()) {
    int sign = 0;
    if (c.eat('+')) sign = 1;
    else if (c.eat('-')) sign = -1;
    if (sign != 0) {
      mpq_class rat, coeff;
      long td = 0;
      parse_term(rat, coeff, td);
      if (td != 0 && d != 0 && td != d) c.fail("two distinct sqrt fields");
      a += sign * rat;
      b += sign * coeff;
      if (td != 0) d = td;
      c.skip_ws();
    }
  }
  if (c.pos != c.s.size()) c.fail("trailing characters");
  if (sgn(b) == 0) return Scalar(a);
  return Scalar::quadratic(a, b, d);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace pap
