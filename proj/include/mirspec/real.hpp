// Arbitrary-precision real and complex scalars backed by MPFR.
//
// Every Real carries its own precision. Binary operations produce a result
// at the larger of the two operand precisions; mixing with double keeps the
// Real's precision. Complex is a plain (re, im) pair of Reals with the
// handful of elementary functions the solver needs.
#pragma once

#include <mpfr.h>

#include <compare>
#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace mirspec {

using Precision = mpfr_prec_t;

class Real {
 public:
  Real() : Real(64) {}
  explicit Real(Precision prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(double x, Precision prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(long x, Precision prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(int x, Precision prec) : Real(static_cast<long>(x), prec) {}
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    // steal the limbs; leave o as a valid minimal-precision zero
    v_[0] = o.v_[0];
    mpfr_init2(o.v_, MPFR_PREC_MIN);
  }
  ~Real() { mpfr_clear(v_); }

  Real& operator=(const Real& o) {
    if (this != &o) {
      if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) std::swap(v_[0], o.v_[0]);
    return *this;
  }

  /// Parses a decimal literal at the requested precision. Throws on malformed input.
  static Real from_string(std::string_view s, Precision prec);
  static Real pi(Precision prec);
  /// 2^e at the given precision.
  static Real pow2(long e, Precision prec);

  Precision precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; very negative for zero.
  long exponent2() const;

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(double o) { mpfr_mul_d(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator/=(double o) { mpfr_div_d(v_, v_, o, MPFR_RNDN); return *this; }

  friend Real operator+(Real a, const Real& b) { a += b; return a; }
  friend Real operator-(Real a, const Real& b) { a -= b; return a; }
  friend Real operator*(Real a, const Real& b) { a *= b; return a; }
  friend Real operator/(Real a, const Real& b) { a /= b; return a; }
  friend Real operator+(Real a, double b) { mpfr_add_d(a.v_, a.v_, b, MPFR_RNDN); return a; }
  friend Real operator-(Real a, double b) { mpfr_sub_d(a.v_, a.v_, b, MPFR_RNDN); return a; }
  friend Real operator*(Real a, double b) { a *= b; return a; }
  friend Real operator/(Real a, double b) { a /= b; return a; }
  friend Real operator+(double a, Real b) { mpfr_add_d(b.v_, b.v_, a, MPFR_RNDN); return b; }
  friend Real operator-(double a, Real b) { mpfr_d_sub(b.v_, a, b.v_, MPFR_RNDN); return b; }
  friend Real operator*(double a, Real b) { b *= a; return b; }
  friend Real operator/(double a, Real b) { mpfr_d_div(b.v_, a, b.v_, MPFR_RNDN); return b; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, double b) {
    if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp_d(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  /// Decimal rendering with `digits` significant digits, round-half-even.
  std::string to_string(int digits) const;

 private:
  mpfr_t v_;
};

std::ostream& operator<<(std::ostream& os, const Real& x);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log10(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
Real asinh(const Real& x);
Real acosh(const Real& x);
Real acos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& x, const Real& y);
Real ldexp(const Real& x, long e);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
/// Copy rounded to a new precision.
Real with_precision(const Real& x, Precision prec);

struct Complex {
  Real re;
  Real im;

  Complex() = default;
  explicit Complex(Precision prec) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(Real r) : re(std::move(r)), im(re.precision()) {}
  Complex(double r, double i, Precision prec) : re(r, prec), im(i, prec) {}

  Precision precision() const { return std::max(re.precision(), im.precision()); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& o) { re *= o; im *= o; return *this; }
  Complex& operator/=(const Real& o) { re /= o; im /= o; return *this; }
  Complex& operator*=(double o) { re *= o; im *= o; return *this; }

  friend Complex operator+(Complex a, const Complex& b) { a += b; return a; }
  friend Complex operator-(Complex a, const Complex& b) { a -= b; return a; }
  friend Complex operator*(Complex a, const Complex& b) { a *= b; return a; }
  friend Complex operator/(Complex a, const Complex& b) { a /= b; return a; }
  friend Complex operator*(Complex a, const Real& b) { a *= b; return a; }
  friend Complex operator*(const Real& b, Complex a) { a *= b; return a; }
  friend Complex operator/(Complex a, const Real& b) { a /= b; return a; }
  friend Complex operator*(Complex a, double b) { a *= b; return a; }
  friend Complex operator*(double b, Complex a) { a *= b; return a; }
  friend Complex operator+(Complex a, const Real& b) { a.re += b; return a; }
  friend Complex operator-(Complex a, const Real& b) { a.re -= b; return a; }
  friend Complex operator+(Complex a, double b) { a.re = a.re + b; return a; }
  friend Complex operator-(Complex a, double b) { a.re = a.re - b; return a; }
  friend Complex operator-(double b, Complex a) { a.re = b - a.re; a.im = -a.im; return a; }
  friend Complex operator+(double b, Complex a) { a.re = a.re + b; return a; }
  friend Complex operator/(double b, const Complex& a);
  friend Complex operator+(const Real& b, Complex a) { a.re += b; return a; }
  friend Complex operator-(const Real& b, Complex a) { a.re = b - a.re; a.im = -a.im; return a; }
  friend Complex operator/(const Real& b, const Complex& a) { return Complex(b) / a; }

  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

std::ostream& operator<<(std::ostream& os, const Complex& z);

Complex conj(const Complex& z);
Real abs(const Complex& z);
/// |z|^2 without the square root.
Real norm(const Complex& z);
Real arg(const Complex& z);
Complex exp(const Complex& z);
/// Principal logarithm.
Complex log(const Complex& z);
/// Principal square root.
Complex sqrt(const Complex& z);
Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex sinh(const Complex& z);
Complex cosh(const Complex& z);
/// Principal arccos, acos(z) = -i log(z + i sqrt(1 - z^2)).
Complex acos(const Complex& z);
Complex pow(const Complex& z, long n);
/// Multiply by i.
Complex times_i(const Complex& z);
Complex with_precision(const Complex& z, Precision prec);

}  // namespace mirspec
