#include "mirspec/eigenfunction.hpp"

#include <array>
#include <cmath>

#include "mirspec/error.hpp"

namespace mirspec {

EigenfunctionParams EigenfunctionParams::make(const SpectralPoint& pt, const ModularParam& mp,
                                              const PrecCtx& ctx) {
  if (pt.parity != 0 && pt.parity != 1 && pt.parity != -1)
    throw InvalidArgument("parity must be +1, -1 or 0");
  EigenfunctionParams p;
  p.point = pt;
  p.mp = mp;
  p.eta = (mp.b + 1.0 / mp.b) / Real(2L, ctx.bits);
  p.rho = rho_extract(pt.sigma, pt.eps, mp, ctx).rho;
  return p;
}

Real theta_zero_distance(const Complex& x, const EigenfunctionParams& p, Complex* nearest) {
  const Precision prec = x.precision();
  const Complex b = with_precision(p.mp.b, prec);
  const Complex c = 1.0 / b;
  const Real sigma = with_precision(p.point.sigma, prec);
  Real best(1e300, prec);
  for (int sgn : {1, -1}) {
    // zeros at x + sgn*sigma = i (n b + m / b)
    const Complex y = x + sigma * static_cast<double>(sgn);
    const Complex t(y.im, -y.re);  // -i y
    const Real det = b.re * c.im - c.re * b.im;
    const Real n = (t.re * c.im - c.re * t.im) / det;
    const Real m = (b.re * t.im - t.re * b.im) / det;
    const long n0 = std::lround(n.to_double()), m0 = std::lround(m.to_double());
    for (long dn = -1; dn <= 1; ++dn)
      for (long dm = -1; dm <= 1; ++dm) {
        const Complex lat = b * Real(n0 + dn, prec) + c * Real(m0 + dm, prec);
        const Complex z = Complex(-lat.im, lat.re) - sigma * static_cast<double>(sgn);  // i*lat - sgn sigma
        const Real d = abs(x - z);
        if (d < best) {
          best = d;
          if (nearest) *nearest = z;
        }
      }
  }
  return best;
}

namespace {

struct RawPsi {
  Complex value;
  long loss = 0;  // bits lost to cancellation in the chi series
};

RawPsi psi_raw(const Complex& x_in, const EigenfunctionParams& p, const PrecCtx& ctx,
               const ModularParam& mp, PsiPart part) {
  const Complex x = with_precision(x_in, ctx.bits);
  const Real pi = ctx.pi();
  const Complex b = with_precision(mp.b, ctx.bits);
  const Complex binv = 1.0 / b;
  const Real sigma = with_precision(p.point.sigma, ctx.bits);
  const Complex eps = with_precision(p.point.eps, ctx.bits);
  const double xi = p.point.parity == 0 ? 1.0 : static_cast<double>(p.point.parity);

  const Complex u = exp(b * x * (pi * 2.0));
  const Complex ub = exp(binv * x * (pi * 2.0));
  ChiSeries cs(eps, mp.q, ctx);
  ChiSeries csb(conj(eps), mp.qbar, ctx);
  const ValueDeriv cu = cs.eval(u), ccu = cs.eval_check(u);
  const ValueDeriv cb = csb.eval(ub), ccb = csb.eval_check(ub);
  long loss = 0;
  for (const ValueDeriv* v : {&cu, &ccu, &cb, &ccb})
    if (!v->value.is_zero()) loss = std::max(loss, v->lscale - lmag(v->value));

  Complex num(ctx.bits);
  if (part != PsiPart::chi_first) num += ccu.value * cb.value;
  if (part != PsiPart::chi_check_first) num += cu.value * ccb.value * xi;
  const Complex den = theta1(b * ((sigma + x) * (pi * 2.0)), mp.log_q, ctx) *
                      theta1(b * ((x - sigma) * (pi * 2.0)), mp.log_q, ctx);
  const Complex eta = (b + binv) / Real(2L, ctx.bits);
  // b^{-1} e^{pi i sigma^2 - xi pi i/4} e^{2 pi eta x + i pi x^2}
  Complex ph = times_i(Complex(sigma * sigma * pi - pi * (xi / 4.0), Real(ctx.bits)));
  ph += eta * x * (pi * 2.0) + times_i(x * x * pi);
  return {binv * exp(ph) * num / den, loss};
}

// Evaluate, widening the precision when the chi series lose too many bits.
Complex psi_point(const Complex& x, const EigenfunctionParams& p, const PrecCtx& ctx, PsiPart part) {
  RawPsi r = psi_raw(x, p, ctx, p.mp, part);
  if (r.loss > static_cast<long>(ctx.bits) / 4) {
    PrecCtx wide = ctx;
    wide.bits = ctx.bits + r.loss + 32;
    ModularParam wmp = ModularParam::make(p.mp.theta, wide);
    if (p.mp.b.im.sign() < 0) wmp = wmp.conjugate();
    r = psi_raw(x, p, wide, wmp, part);
    return with_precision(r.value, ctx.bits);
  }
  return r.value;
}

}  // namespace

Complex psi_eval(const Complex& x_in, const EigenfunctionParams& p, const PrecCtx& ctx, PsiPart part) {
  const Complex x = with_precision(x_in, ctx.bits);
  const Real delta = Real::pow2(-static_cast<long>(ctx.bits) / 5, ctx.bits);
  Complex z;
  const Real d = theta_zero_distance(x, p, &z);
  if (!(d < delta * 4.0)) return psi_point(x, p, ctx, part);
  if (p.point.parity == 0)
    throw PoleError("psi_eval: x is at a pole of the ansatz (point is not quantized)");
  // cubic interpolation in the offset from the zero, nodes at +-4 delta, +-8 delta
  const std::array<double, 4> nodes{-8.0, -4.0, 4.0, 8.0};
  const Complex t = (x - z) / delta;
  Complex acc(ctx.bits);
  for (size_t i = 0; i < nodes.size(); ++i) {
    Complex w(Real(1L, ctx.bits), Real(ctx.bits));
    for (size_t j = 0; j < nodes.size(); ++j)
      if (j != i) w = w * (t - nodes[j]) / Complex(Real(nodes[i] - nodes[j], ctx.bits), Real(ctx.bits));
    acc += w * psi_point(z + Complex(delta * nodes[i], Real(ctx.bits)), p, ctx, part);
  }
  return acc;
}

PsiResidual psi_residual(const Real& x_in, const EigenfunctionParams& p, const PrecCtx& ctx) {
  const Complex x(with_precision(x_in, ctx.bits), Real(ctx.bits));
  const Complex b = with_precision(p.mp.b, ctx.bits);
  const Complex binv = 1.0 / b;
  const Complex eps = with_precision(p.point.eps, ctx.bits);
  const Real twopi = ctx.pi() * 2.0;
  const Complex psi0 = psi_eval(x, p, ctx);
  auto rel = [&](const Complex& shift, const Complex& e, const Complex& scale_b) {
    const Complex plus = psi_eval(x + shift, p, ctx);
    const Complex minus = psi_eval(x - shift, p, ctx);
    const Complex rhs = (e - cosh(scale_b * x * twopi) * 2.0) * psi0;
    const Real norm = abs(plus) + abs(minus) + abs(rhs);
    return norm.is_zero() ? Real(ctx.bits) : abs(plus + minus - rhs) / norm;
  };
  return {rel(times_i(b), eps, b), rel(times_i(binv), conj(eps), binv)};
}

PoleReport pole_cancellation_check(const EigenfunctionParams& p, const PrecCtx& ctx) {
  const Complex eps = with_precision(p.point.eps, ctx.bits);
  const double xi = p.point.parity == 0 ? 1.0 : static_cast<double>(p.point.parity);
  ChiSeries cs(eps, p.mp.q, ctx);
  ChiSeries csb(conj(eps), p.mp.qbar, ctx);
  const Real pi = ctx.pi();
  const Complex b = with_precision(p.mp.b, ctx.bits);
  const Complex binv = 1.0 / b;
  const Real sigma = with_precision(p.point.sigma, ctx.bits);
  // u = e^{2 pi b x}, ubar = e^{2 pi x / b} at x = sigma, sigma + i b, -sigma
  auto normalized = [&](const Complex& x) {
    const Complex u = exp(b * x * (pi * 2.0));
    const Complex ub = exp(binv * x * (pi * 2.0));
    const Complex a = cs.eval_check(u).value * csb.eval(ub).value;
    const Complex c = cs.eval(u).value * csb.eval_check(ub).value * xi;
    const Real scale = abs(a) + abs(c);
    return scale.is_zero() ? Real(ctx.bits) : abs(a + c) / scale;
  };
  PoleReport r;
  const Complex xs(sigma, Real(ctx.bits));
  r.at_s = normalized(xs);
  r.at_q2s = normalized(xs + times_i(b));
  r.at_sinv = normalized(-xs);
  r.max_normalized = max(r.at_s, max(r.at_q2s, r.at_sinv));
  return r;
}

}  // namespace mirspec
