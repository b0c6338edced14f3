#include "mirspec/real.hpp"

#include <climits>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace mirspec {

namespace {

Precision pmax(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

// Grow `a` in place so it can hold a result at `p` bits.
void widen(Real& a, Precision p) {
  if (a.precision() < p) mpfr_prec_round(a.raw(), p, MPFR_RNDN);
}

template <class F>
Real unary(const Real& x, F f) {
  Real r(x.precision());
  f(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

}  // namespace

Real Real::from_string(std::string_view s, Precision prec) {
  std::string buf(s);
  Real r(prec);
  char* end = nullptr;
  if (!buf.empty()) mpfr_strtofr(r.v_, buf.c_str(), &end, 10, MPFR_RNDN);
  if (end == nullptr || end == buf.c_str() || *end != '\0')
    throw std::invalid_argument("not a decimal number: '" + buf + "'");
  return r;
}

Real Real::pi(Precision prec) {
  Real r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::pow2(long e, Precision prec) {
  Real r(prec);
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

long Real::exponent2() const {
  if (!mpfr_regular_p(v_)) return LONG_MIN / 2;
  return mpfr_get_exp(v_);
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& o) {
  widen(*this, o.precision());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  widen(*this, o.precision());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  widen(*this, o.precision());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  widen(*this, o.precision());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

std::string Real::to_string(int digits) const {
  if (digits < 1) digits = 1;
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
  if (mpfr_zero_p(v_)) return "0";
  char* s = nullptr;
  // %.*Re with RNDN gives round-half-even on the decimal digit string
  mpfr_asprintf(&s, "%.*Re", digits - 1, v_);
  std::unique_ptr<char, void (*)(char*)> guard(s, [](char* p) { mpfr_free_str(p); });
  std::string out(s);
  // use plain positional notation for moderate exponents
  const auto epos = out.find('e');
  if (epos == std::string::npos) return out;
  const long ex = std::strtol(out.c_str() + epos + 1, nullptr, 10);
  if (ex < -6 || ex >= digits + 3) return out;
  std::string mant = out.substr(0, epos);
  bool neg = false;
  if (mant[0] == '-') { neg = true; mant.erase(0, 1); }
  std::string ds;
  for (char c : mant)
    if (c != '.') ds.push_back(c);
  std::string res;
  if (ex < 0) {
    res = "0." + std::string(static_cast<size_t>(-ex - 1), '0') + ds;
  } else if (static_cast<size_t>(ex + 1) >= ds.size()) {
    res = ds + std::string(static_cast<size_t>(ex + 1) - ds.size(), '0');
  } else {
    res = ds.substr(0, static_cast<size_t>(ex + 1)) + "." + ds.substr(static_cast<size_t>(ex + 1));
  }
  return neg ? "-" + res : res;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
  const auto p = os.precision();
  return os << x.to_string(p > 0 ? static_cast<int>(p) : 17);
}

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real log10(const Real& x) { return unary(x, mpfr_log10); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real sinh(const Real& x) { return unary(x, mpfr_sinh); }
Real cosh(const Real& x) { return unary(x, mpfr_cosh); }
Real tanh(const Real& x) { return unary(x, mpfr_tanh); }
Real asinh(const Real& x) { return unary(x, mpfr_asinh); }
Real acosh(const Real& x) { return unary(x, mpfr_acosh); }
Real acos(const Real& x) { return unary(x, mpfr_acos); }

Real atan2(const Real& y, const Real& x) {
  Real r(pmax(y, x));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
Real hypot(const Real& x, const Real& y) {
  Real r(pmax(x, y));
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
Real pow(const Real& x, const Real& y) {
  Real r(pmax(x, y));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}
Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real with_precision(const Real& x, Precision prec) {
  Real r(prec);
  mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

// ---- Complex ----

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  // scaled division avoids overflow when |o| is extreme
  if (abs(o.im) <= abs(o.re)) {
    Real t = o.im / o.re;
    Real d = o.re + o.im * t;
    Real r = (re + im * t) / d;
    im = (im - re * t) / d;
    re = std::move(r);
  } else {
    Real t = o.re / o.im;
    Real d = o.re * t + o.im;
    Real r = (re * t + im) / d;
    im = (im * t - re) / d;
    re = std::move(r);
  }
  return *this;
}

Complex operator/(double b, const Complex& a) {
  Complex one(Real(b, a.precision()), Real(a.precision()));
  return one / a;
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  os << z.re;
  if (z.im.sign() >= 0) os << '+';
  return os << z.im << 'i';
}

Complex conj(const Complex& z) { return {z.re, -z.im}; }
Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex exp(const Complex& z) {
  const Precision p = z.precision();
  Real m = exp(with_precision(z.re, p));
  Real s(p), c(p);
  mpfr_sin_cos(s.raw(), c.raw(), with_precision(z.im, p).raw(), MPFR_RNDN);
  return {m * c, m * s};
}

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex sqrt(const Complex& z) {
  const Precision p = z.precision();
  if (z.is_zero()) return Complex(p);
  Real m = abs(z);
  Real t = sqrt((m + abs(z.re)) / 2.0);
  if (z.re.sign() >= 0) return {t, z.im / (t * 2.0)};
  Real y = z.im.sign() < 0 ? -t : t;
  return {z.im / (y * 2.0), y};
}

Complex sin(const Complex& z) {
  // sin(a+ib) = sin a cosh b + i cos a sinh b
  return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}
Complex cos(const Complex& z) { return {cos(z.re) * cosh(z.im), -(sin(z.re) * sinh(z.im))}; }
Complex sinh(const Complex& z) { return {sinh(z.re) * cos(z.im), cosh(z.re) * sin(z.im)}; }
Complex cosh(const Complex& z) { return {cosh(z.re) * cos(z.im), sinh(z.re) * sin(z.im)}; }

Complex times_i(const Complex& z) { return {-z.im, z.re}; }

Complex acos(const Complex& z) {
  const Complex w = z + times_i(sqrt(1.0 - z * z));
  const Complex l = log(w);
  return {l.im, -l.re};
}

Complex pow(const Complex& z, long n) {
  const Precision p = z.precision();
  if (n < 0) return 1.0 / pow(z, -n);
  Complex r(Real(1L, p), Real(p));
  Complex b = z;
  while (n > 0) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

Complex with_precision(const Complex& z, Precision prec) {
  return {with_precision(z.re, prec), with_precision(z.im, prec)};
}

}  // namespace mirspec
