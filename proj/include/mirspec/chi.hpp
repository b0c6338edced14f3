// The regular solution chi_q(u, eps) of
//   f(u/q^2) + q^2 u^2 f(q^2 u) = (1 - eps u + u^2) f(u),   f(0) = 1,
// built from the orthogonal polynomials chi_{q,n}(eps), plus its involution
// partner, the dual solution and the ratio G.
#pragma once

#include <vector>

#include "mirspec/precision.hpp"

namespace mirspec {

struct ChiPolySeq {
  Complex eps;
  Complex q;
  long N = 0;
  std::vector<Complex> values;   // chi_{q,0..N}(eps)
  std::vector<Complex> dvalues;  // d/deps of the same
};

/// chi_{q,n}(eps) for n = 0..N by the three-term recursion (and its eps-derivative).
ChiPolySeq chi_poly_seq(const Complex& eps, const ModularParam& mp, long N, const PrecCtx& ctx);

struct ValueDeriv {
  Complex value;
  Complex deps;  // derivative in eps
  long lscale = 0;  // log2 of the largest summand, the cancellation scale of `value`
};

/// Series coefficients c_n = chi_{q,n}(eps)/(q^-2;q^-2)_n for one eps, grown on demand.
/// Evaluating mutates the cache; give each thread its own instance.
class ChiSeries {
 public:
  ChiSeries(const Complex& eps, const Complex& q, const PrecCtx& ctx);
  ChiSeries(const Complex& eps, const ModularParam& mp, const PrecCtx& ctx)
      : ChiSeries(eps, mp.q, ctx) {}

  /// chi(u) and d chi / d eps.
  ValueDeriv eval(const Complex& u);
  /// chi-check(u) = u^{-1} chi(1/u).
  ValueDeriv eval_check(const Complex& u);
  /// Wronskian [chi, chi-check](u) = chi(u/q^2) chi-check(u) - chi-check(u/q^2) chi(u).
  ValueDeriv wronskian(const Complex& u);

  const Complex& eps() const { return eps_; }
  const Complex& q() const { return q_; }
  const PrecCtx& ctx() const { return ctx_; }
  /// c_n and d c_n / d eps, growing the cache if needed.
  const Complex& coeff(long n);
  const Complex& dcoeff(long n);
  long size() const { return static_cast<long>(c_.size()); }

 private:
  void grow_to(long n);

  PrecCtx ctx_;
  Complex eps_;
  Complex q_;
  Complex qinv_;
  Complex qn_;    // q^n for the next recursion step
  Complex qm2n_;  // q^{-2n} for the next Pochhammer factor
  std::vector<Complex> chi_, dchi_;  // last two polynomial values
  Complex poch_;
  std::vector<Complex> c_, dc_;
};

ValueDeriv chi_eval(const Complex& u, const Complex& eps, const ModularParam& mp, const PrecCtx& ctx);
/// Rejects u = 0.
Complex chi_check_eval(const Complex& u, const Complex& eps, const ModularParam& mp,
                       const PrecCtx& ctx);
/// chi_{q^-1}(u) = chi-check(u)/W(u); PoleError when |W(u)| is below the zero floor.
Complex chi_dual_eval(const Complex& u, const Complex& eps, const ModularParam& mp,
                      const PrecCtx& ctx);
/// Same, reusing a series for the given eps.
Complex chi_dual_eval(ChiSeries& cs, const Complex& u);

struct GValue {
  Complex value;
  bool near_zero_denominator = false;
};
/// G(u) = chi(u)/chi-check(u); PoleError if chi-check(u) is exactly zero.
GValue G_eval(const Complex& u, const Complex& eps, const ModularParam& mp, const PrecCtx& ctx);
GValue G_eval(ChiSeries& cs, const Complex& u);

/// |chi_m chi_n - sum_k coeff_k chi_{m+n-2k}| relative to |chi_m chi_n|.
Real chi_mult_check(long m, long n, const Complex& eps, const ModularParam& mp, const PrecCtx& ctx);

/// Zero floor 10^3 tol scaled by 2^lscale.
bool below_zero_floor(const Complex& v, long lscale, const PrecCtx& ctx);

}  // namespace mirspec
