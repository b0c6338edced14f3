#include "mirspec/transfer.hpp"

#include "mirspec/chi.hpp"
#include "mirspec/error.hpp"

namespace mirspec {

Mat2 L_eval(const Complex& u_in, const Complex& eps, const ModularParam& mp, const PrecCtx& ctx) {
  const Complex u = with_precision(u_in, ctx.bits);
  const Complex u2 = u * u;
  const Complex q = with_precision(mp.q, ctx.bits);
  Real one(1L, ctx.bits), zero(ctx.bits);
  return {1.0 - eps * u + u2, -(q * q * u2), Complex(one, zero), Complex(ctx.bits)};
}

Mat2 M_n_eval(const Complex& u, long n, const Complex& eps, const ModularParam& mp,
              const PrecCtx& ctx) {
  if (n < 1) throw InvalidArgument("M_n_eval: n must be >= 1");
  const Complex q2 = with_precision(mp.q * mp.q, ctx.bits);
  Complex v = with_precision(u, ctx.bits);
  Mat2 m = L_eval(v, eps, mp, ctx);
  for (long k = 1; k < n; ++k) {
    v *= q2;
    m = m * L_eval(v, eps, mp, ctx);
  }
  return m;
}

ChiPair chi_via_Minf(const Complex& u, const Complex& eps, const ModularParam& mp,
                     const PrecCtx& ctx) {
  if (!(abs(mp.q) < 1.0)) throw NumericalError("chi_via_Minf: |q| >= 1");
  const Complex q2 = with_precision(mp.q * mp.q, ctx.bits);
  Complex v = with_precision(u, ctx.bits);
  Mat2 m = L_eval(v, eps, mp, ctx);
  const long lt = ctx.tol_log2();
  int small = 0;
  for (long k = 1; k < ctx.max_terms; ++k) {
    v *= q2;
    Mat2 next = m * L_eval(v, eps, mp, ctx);
    // column 1 changes by O(|q^{2k} u|); the second column decays like q^{4k}
    const long scale = std::max({lmag(next.a), lmag(next.c), 1L});
    const bool settled = lmag(next.a - m.a) < scale + lt - 1 && lmag(next.c - m.c) < scale + lt - 1 &&
                         lmag(next.b) < scale + lt - 1 && lmag(next.d) < scale + lt - 1;
    m = std::move(next);
    if (!m.a.is_finite() || !m.c.is_finite())
      throw NumericalError("chi_via_Minf: overflow; raise precision");
    small = settled ? small + 1 : 0;
    if (small >= 3) return {m.c, m.a, k + 1};
  }
  throw NumericalError("chi_via_Minf: iteration cap reached; raise precision");
}

const char* orbit_limit_name(OrbitLimit l) {
  switch (l) {
    case OrbitLimit::zero: return "zero";
    case OrbitLimit::one: return "one";
    case OrbitLimit::undecided: return "undecided";
    case OrbitLimit::blowup: return "blowup";
  }
  return "?";
}

namespace {

// Classifies a trajectory whose generic limit is `generic` and whose
// exceptional (unstable) limit is `exceptional`.
void classify(ROrbit& o, double generic, double exceptional, const PrecCtx& ctx) {
  const Real margin(1e-6, ctx.bits);
  const Real huge(1e6, ctx.bits);
  for (size_t k = 0; k < o.values.size(); ++k) {
    const Complex& v = o.values[k];
    if (!v.is_finite()) {
      o.blowup_step = static_cast<long>(k);
      o.limit = OrbitLimit::blowup;
      return;
    }
    if (o.blowup_step < 0 && abs(v) > huge) o.blowup_step = static_cast<long>(k);
  }
  bool hit_exceptional = false;
  for (size_t k = 1; k < o.values.size(); ++k) {
    if (o.blowup_step >= 0 && static_cast<long>(k) >= o.blowup_step) break;
    if (abs(o.values[k] - exceptional) < margin) hit_exceptional = true;
  }
  if (hit_exceptional) {
    o.limit = exceptional == 0.0 ? OrbitLimit::zero : OrbitLimit::one;
    return;
  }
  if (o.blowup_step >= 0) {
    o.limit = OrbitLimit::blowup;
    return;
  }
  if (abs(o.values.back() - generic) < margin)
    o.limit = generic == 0.0 ? OrbitLimit::zero : OrbitLimit::one;
}

ROrbit iterate_R(const Complex& z, const Complex& R0, long steps, const Complex& eps,
                 const ModularParam& mp, const PrecCtx& ctx) {
  if (steps < 1) throw InvalidArgument("orbit: steps must be >= 1");
  ChiSeries cs(eps, mp, ctx);
  const Complex zz = with_precision(z, ctx.bits);
  const Complex q2 = with_precision(mp.q * mp.q, ctx.bits);
  const ValueDeriv cz = cs.eval(zz);
  if (below_zero_floor(cz.value, cz.lscale, ctx))
    throw PoleError("orbit start: chi(z) vanishes, R_chi(z) undefined");
  const Complex Rchi = cs.eval(zz / q2).value / cz.value;
  ROrbit o;
  const Real d = abs(R0 - Rchi);
  o.critical = d <= ctx.tol * 10.0 * max(Real(1L, ctx.bits), abs(Rchi));
  o.values.reserve(steps + 1);
  o.values.push_back(with_precision(R0, ctx.bits));
  Complex u = zz;
  for (long k = 0; k < steps; ++k) {
    const Complex den = 1.0 - eps * u + u * u - o.values.back();
    Complex next = q2 * u * u / den;
    o.values.push_back(std::move(next));
    u *= q2;
  }
  return o;
}

}  // namespace

ROrbit R_orbit(const Complex& z, const Complex& R0, long steps, const Complex& eps,
               const ModularParam& mp, const PrecCtx& ctx) {
  ROrbit o = iterate_R(z, R0, steps, eps, mp, ctx);
  classify(o, 0.0, 1.0, ctx);
  return o;
}

ROrbit P_orbit(const Complex& z, const Complex& P0, long steps, const Complex& eps,
               const ModularParam& mp, const PrecCtx& ctx) {
  const Complex zz = with_precision(z, ctx.bits);
  const Complex R0 = 1.0 - eps * zz + zz * zz - P0;
  ROrbit o = iterate_R(zz, R0, steps, eps, mp, ctx);
  const Complex q2 = with_precision(mp.q * mp.q, ctx.bits);
  Complex u = zz;
  for (auto& v : o.values) {
    v = 1.0 - eps * u + u * u - v;
    u *= q2;
  }
  classify(o, 1.0, 0.0, ctx);
  return o;
}

}  // namespace mirspec
