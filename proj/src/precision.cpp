#include "mirspec/precision.hpp"

#include <climits>
#include <cmath>
#include <string>

#include "mirspec/error.hpp"

namespace mirspec {

PrecCtx PrecCtx::make(long bits, const Real& tol, long max_terms) {
  if (bits < 64) throw InvalidArgument("precision_bits must be >= 64, got " + std::to_string(bits));
  if (!tol.is_finite() || tol.sign() <= 0) throw InvalidArgument("tol must be a positive number");
  if (max_terms < 16) throw InvalidArgument("max_terms must be >= 16");
  // tol >= 2^{-bits+16}
  const Real floor = Real::pow2(-bits + 16, bits);
  if (tol < floor)
    throw InvalidArgument("tol " + tol.to_string(6) + " is not reachable at " + std::to_string(bits) +
                          " bits (need >= " + floor.to_string(6) + ")");
  PrecCtx c;
  c.bits = bits;
  c.tol = with_precision(tol, bits);
  c.max_terms = max_terms;
  return c;
}

PrecCtx PrecCtx::make(long bits, std::string_view tol, long max_terms) {
  Real t(static_cast<Precision>(std::max(bits, 64L)));
  try {
    t = Real::from_string(tol, std::max(bits, 64L));
  } catch (const std::invalid_argument& e) {
    throw InvalidArgument(e.what());
  }
  return make(bits, t, max_terms);
}

PrecCtx PrecCtx::make(long bits, double tol, long max_terms) {
  return make(bits, Real(tol, std::max(bits, 64L)), max_terms);
}

long PrecCtx::tol_log2() const { return tol.exponent2() - 1; }

PrecCtx PrecCtx::refined() const {
  return make(bits * 2, with_precision(tol, bits * 2) / 2.0, max_terms * 2);
}

long lmag(const Real& x) { return x.exponent2(); }

long lmag(const Complex& z) { return std::max(z.re.exponent2(), z.im.exponent2()); }

ModularParam ModularParam::make(const Real& theta_in, const PrecCtx& ctx) {
  ModularParam m;
  m.theta = with_precision(theta_in, ctx.bits);
  const Real pi = ctx.pi();
  // |q| = e^{-pi sin 2 theta}: need sin 2 theta > 0, i.e. theta in (0, pi/2)
  if (!(m.theta > 0.0) || !(m.theta < pi / 2.0))
    throw InvalidArgument("theta must lie in (0, pi/2), got " + m.theta.to_string(10));
  m.b = Complex(cos(m.theta), sin(m.theta));
  const Complex b2 = m.b * m.b;
  const Complex bm2 = conj(b2);  // |b| = 1
  m.log_q = times_i(b2) * pi;
  m.log_qbar = -(times_i(bm2) * pi);
  m.q = exp(m.log_q);
  m.qbar = exp(m.log_qbar);
  if (!(m.log_q.re < 0.0) || !(m.log_qbar.re < 0.0))
    throw InvalidArgument("theta gives |q| >= 1");
  m.flagged = m.theta < pi / 8.0;
  return m;
}

ModularParam ModularParam::pi_over_4(const PrecCtx& ctx) { return make(ctx.pi() / 4.0, ctx); }

ModularParam ModularParam::conjugate() const {
  ModularParam m = *this;
  m.b = conj(b);
  std::swap(m.q, m.qbar);
  std::swap(m.log_q, m.log_qbar);
  return m;
}

Complex pochhammer_q(const Complex& x, const Complex& q, long n, const PrecCtx& ctx) {
  if (n < 0) throw InvalidArgument("pochhammer_q: n must be >= 0");
  Complex r(Real(1L, ctx.bits), Real(ctx.bits));
  Complex xi = with_precision(x, ctx.bits);
  for (long i = 0; i < n; ++i) {
    r *= 1.0 - xi;
    xi *= q;
  }
  return r;
}

Complex pochhammer_q_inf(const Complex& x, const Complex& q, const PrecCtx& ctx) {
  if (!(abs(q) < 1.0)) throw NumericalError("pochhammer_q_inf: |q| >= 1, product diverges");
  Complex r(Real(1L, ctx.bits), Real(ctx.bits));
  Complex xi = with_precision(x, ctx.bits);
  const long lt = ctx.tol_log2();
  int small = 0;
  for (long i = 0; i < ctx.max_terms; ++i) {
    r *= 1.0 - xi;
    small = lmag(xi) < lt ? small + 1 : 0;
    if (small >= 3) return r;
    xi *= q;
  }
  throw NumericalError("pochhammer_q_inf: max_terms reached");
}

Complex theta1(const Complex& w_in, const Complex& log_q_in, const PrecCtx& ctx) {
  if (!(log_q_in.re < 0.0)) throw NumericalError("theta1: |q| >= 1");
  const Complex w = with_precision(w_in, ctx.bits);
  const Complex L = with_precision(log_q_in, ctx.bits);
  // pair n with -n-1:  (1/i) sum_{n>=0} (-1)^n q^{(n+1/2)^2} 2 sinh((n+1/2) w)
  Complex qn = exp(L / Real(4L, ctx.bits));  // q^{1/4}
  const Complex q2 = exp(L * 2.0);
  Complex qstep = q2;                         // q^{2n+2}
  Complex ep = exp(w / Real(2L, ctx.bits));  // e^{(n+1/2) w}
  Complex em = 1.0 / ep;
  const Complex ew = exp(w);
  const Complex emw = 1.0 / ew;
  Complex sum(ctx.bits);
  long big = LONG_MIN / 2;
  const long lt = ctx.tol_log2();
  int small = 0;
  for (long n = 0; n < ctx.max_terms; ++n) {
    Complex term = qn * (ep - em);
    if (n & 1) sum -= term; else sum += term;
    const long lm = lmag(term);
    big = std::max(big, lm);
    const long scale = std::max(lmag(sum), big);
    small = (term.is_zero() || lm < scale + lt - 1) ? small + 1 : 0;
    if (small >= 3) return Complex(sum.im, -sum.re);  // divide by i
    qn *= qstep;
    qstep *= q2;
    ep *= ew;
    em *= emw;
  }
  throw NumericalError("theta1: max_terms reached");
}

}  // namespace mirspec
