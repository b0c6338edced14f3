#include "mirspec/chi.hpp"

#include <climits>
#include <string>

#include "mirspec/error.hpp"

namespace mirspec {

namespace {

void require_finite(const Complex& z, long n) {
  if (!z.is_finite())
    throw NumericalError("chi recursion overflowed at n = " + std::to_string(n) + "; raise precision");
}

}  // namespace

ChiPolySeq chi_poly_seq(const Complex& eps_in, const ModularParam& mp, long N, const PrecCtx& ctx) {
  if (N < 2) throw InvalidArgument("chi_poly_seq: N must be >= 2");
  ChiPolySeq s;
  s.eps = with_precision(eps_in, ctx.bits);
  s.q = with_precision(mp.q, ctx.bits);
  s.N = N;
  s.values.reserve(N + 1);
  s.dvalues.reserve(N + 1);
  s.values.emplace_back(Real(1L, ctx.bits), Real(ctx.bits));
  s.dvalues.emplace_back(ctx.bits);
  s.values.push_back(s.eps);
  s.dvalues.emplace_back(Real(1L, ctx.bits), Real(ctx.bits));
  const Complex qinv = 1.0 / s.q;
  Complex qn = s.q, qmn = qinv;
  for (long n = 1; n < N; ++n) {
    const Complex d = qn - qmn;
    const Complex k = d * d;
    s.values.push_back(s.eps * s.values[n] + k * s.values[n - 1]);
    s.dvalues.push_back(s.values[n] + s.eps * s.dvalues[n] + k * s.dvalues[n - 1]);
    require_finite(s.values.back(), n + 1);
    qn *= s.q;
    qmn *= qinv;
  }
  return s;
}

ChiSeries::ChiSeries(const Complex& eps, const Complex& q, const PrecCtx& ctx)
    : ctx_(ctx),
      eps_(with_precision(eps, ctx.bits)),
      q_(with_precision(q, ctx.bits)),
      qinv_(1.0 / q_),
      qn_(q_),
      qm2n_(qinv_ * qinv_),
      poch_(Real(1L, ctx.bits), Real(ctx.bits)) {
  if (!(abs(q_) < 1.0)) throw NumericalError("chi series: |q| >= 1, no convergence");
  chi_.emplace_back(Real(1L, ctx.bits), Real(ctx.bits));
  dchi_.emplace_back(ctx.bits);
  c_.push_back(chi_[0]);
  dc_.push_back(dchi_[0]);
}

void ChiSeries::grow_to(long n) {
  while (static_cast<long>(c_.size()) <= n) {
    const long k = static_cast<long>(c_.size());
    if (k == 1) {
      chi_.push_back(eps_);
      dchi_.emplace_back(Real(1L, ctx_.bits), Real(ctx_.bits));
    } else {
      // chi_k = eps chi_{k-1} + (q^{k-1} - q^{1-k})^2 chi_{k-2}
      const Complex d = qn_ - 1.0 / qn_;
      const Complex kk = d * d;
      Complex v = eps_ * chi_[k - 1] + kk * chi_[k - 2];
      Complex dv = chi_[k - 1] + eps_ * dchi_[k - 1] + kk * dchi_[k - 2];
      chi_.push_back(std::move(v));
      dchi_.push_back(std::move(dv));
      qn_ *= q_;
    }
    poch_ *= 1.0 - qm2n_;
    qm2n_ *= qinv_ * qinv_;
    c_.push_back(chi_[k] / poch_);
    dc_.push_back(dchi_[k] / poch_);
    require_finite(c_.back(), k);
    require_finite(dc_.back(), k);
  }
}

const Complex& ChiSeries::coeff(long n) {
  grow_to(n);
  return c_[n];
}

const Complex& ChiSeries::dcoeff(long n) {
  grow_to(n);
  return dc_[n];
}

ValueDeriv ChiSeries::eval(const Complex& u_in) {
  ValueDeriv r{Complex(Real(1L, ctx_.bits), Real(ctx_.bits)), Complex(ctx_.bits), 0};
  if (u_in.is_zero()) return r;
  const Complex u = with_precision(u_in, ctx_.bits);
  Complex un = u;
  long big = 1, dbig = LONG_MIN / 2;
  const long lt = ctx_.tol_log2();
  int small = 0;
  for (long n = 1; n < ctx_.max_terms; ++n) {
    grow_to(n);
    const Complex t = c_[n] * un;
    const Complex dt = dc_[n] * un;
    r.value += t;
    r.deps += dt;
    const long lm = lmag(t), dlm = lmag(dt);
    big = std::max(big, lm);
    dbig = std::max(dbig, dlm);
    const bool ok = lm < std::max(lmag(r.value), big) + lt - 1 &&
                    dlm < std::max(lmag(r.deps), dbig) + lt - 1;
    small = ok ? small + 1 : 0;
    if (small >= 3) {
      if (!r.value.is_finite() || !r.deps.is_finite())
        throw NumericalError("chi series overflow; raise precision");
      r.lscale = big;
      return r;
    }
    un *= u;
  }
  throw NumericalError("chi series: max_terms reached before the tail bound; raise max_terms");
}

ValueDeriv ChiSeries::eval_check(const Complex& u) {
  if (u.is_zero()) throw InvalidArgument("chi-check is not defined at u = 0");
  const Complex inv = 1.0 / with_precision(u, ctx_.bits);
  ValueDeriv r = eval(inv);
  r.value *= inv;
  r.deps *= inv;
  r.lscale += lmag(inv);
  return r;
}

ValueDeriv ChiSeries::wronskian(const Complex& u_in) {
  if (u_in.is_zero()) throw InvalidArgument("Wronskian is not defined at u = 0");
  const Complex u = with_precision(u_in, ctx_.bits);
  const Complex q2 = q_ * q_;
  const ValueDeriv a = eval(u / q2);
  const ValueDeriv b = eval_check(u);
  const ValueDeriv c = eval_check(u / q2);
  const ValueDeriv d = eval(u);
  ValueDeriv w;
  w.value = a.value * b.value - c.value * d.value;
  w.deps = a.deps * b.value + a.value * b.deps - c.deps * d.value - c.value * d.deps;
  w.lscale = std::max(a.lscale + b.lscale, c.lscale + d.lscale) + 1;
  return w;
}

bool below_zero_floor(const Complex& v, long lscale, const PrecCtx& ctx) {
  if (v.is_zero()) return true;
  // 10^3 ~ 2^10
  return lmag(v) < lscale + ctx.tol_log2() + 10;
}

ValueDeriv chi_eval(const Complex& u, const Complex& eps, const ModularParam& mp, const PrecCtx& ctx) {
  ChiSeries cs(eps, mp, ctx);
  return cs.eval(u);
}

Complex chi_check_eval(const Complex& u, const Complex& eps, const ModularParam& mp,
                       const PrecCtx& ctx) {
  ChiSeries cs(eps, mp, ctx);
  return cs.eval_check(u).value;
}

Complex chi_dual_eval(ChiSeries& cs, const Complex& u) {
  const ValueDeriv w = cs.wronskian(u);
  if (below_zero_floor(w.value, w.lscale, cs.ctx()))
    throw PoleError("dual solution has a pole: Wronskian vanishes at u = " + u.re.to_string(12) +
                    (u.im.sign() < 0 ? "" : "+") + u.im.to_string(12) + "i");
  return cs.eval_check(u).value / w.value;
}

Complex chi_dual_eval(const Complex& u, const Complex& eps, const ModularParam& mp,
                      const PrecCtx& ctx) {
  ChiSeries cs(eps, mp, ctx);
  return chi_dual_eval(cs, u);
}

GValue G_eval(ChiSeries& cs, const Complex& u) {
  const ValueDeriv num = cs.eval(u);
  const ValueDeriv den = cs.eval_check(u);
  if (den.value.is_zero()) throw PoleError("G: chi-check vanishes exactly");
  return {num.value / den.value, below_zero_floor(den.value, den.lscale, cs.ctx())};
}

GValue G_eval(const Complex& u, const Complex& eps, const ModularParam& mp, const PrecCtx& ctx) {
  ChiSeries cs(eps, mp, ctx);
  return G_eval(cs, u);
}

namespace {

// One pass of the multiplication rule at a given precision; returns the
// residual, |chi_m chi_n| and the largest summand.
struct MultPass {
  Real residual;
  Real product;
  long lmax;
};

MultPass mult_pass(long m, long n, const Complex& eps, const ModularParam& mp, const PrecCtx& ctx) {
  const ChiPolySeq s = chi_poly_seq(eps, mp, std::max(m + n, 2L), ctx);
  const Complex q = with_precision(mp.q, ctx.bits);
  const Complex q2 = q * q;
  const Complex qm2 = 1.0 / q2;
  const Complex lhs = s.values[m] * s.values[n];
  Complex rhs(ctx.bits);
  long lmax = lmag(lhs);
  for (long k = 0; k <= std::min(m, n); ++k) {
    Complex coeff = pochhammer_q(pow(q2, m), qm2, k, ctx) * pochhammer_q(pow(q2, n), qm2, k, ctx) *
                    pochhammer_q(pow(q2, k - m - n), q2, k, ctx) / pochhammer_q(q2, q2, k, ctx);
    Complex t = coeff * s.values[m + n - 2 * k];
    lmax = std::max(lmax, lmag(t));
    rhs += t;
  }
  return {abs(lhs - rhs), abs(lhs), lmax};
}

}  // namespace

Real chi_mult_check(long m, long n, const Complex& eps, const ModularParam& mp, const PrecCtx& ctx) {
  if (m < 0 || n < 0) throw InvalidArgument("chi_mult_check: m, n must be >= 0");
  // The summands can exceed |chi_m chi_n| by many orders of magnitude, so the
  // identity is re-evaluated with enough guard bits to absorb the cancellation.
  MultPass p = mult_pass(m, n, eps, mp, ctx);
  const long lost = p.lmax - lmag(p.product);
  if (lost > 0) {
    PrecCtx wide = ctx;
    wide.bits = ctx.bits + lost + 32;
    ModularParam wmp = ModularParam::make(mp.theta, wide);
    if (mp.b.im.sign() < 0) wmp = wmp.conjugate();
    p = mult_pass(m, n, with_precision(eps, wide.bits), wmp, wide);
  }
  if (p.product.is_zero()) return with_precision(p.residual, ctx.bits);
  return with_precision(p.residual / p.product, ctx.bits);
}

}  // namespace mirspec
