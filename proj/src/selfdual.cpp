#include "mirspec/selfdual.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "mirspec/error.hpp"
#include "mirspec/quadrature.hpp"

namespace mirspec {

AlphaBeta alpha_beta(const Real& eps_in, const PrecCtx& ctx) {
  const Real eps = with_precision(eps_in, ctx.bits);
  if (!(eps > 4.0)) throw InvalidArgument("self-dual eps must exceed 4, got " + eps.to_string(20));
  const Real pi = ctx.pi();
  // sinh(pi alpha) = sqrt(eps - 4)/2 avoids acosh near 1
  AlphaBeta ab;
  ab.alpha = asinh(sqrt(eps - 4.0) / 2.0) / pi;
  ab.beta = asinh(sqrt(eps) / 2.0) / pi;
  return ab;
}

namespace {

// Shared closed forms; sh = sinh(pi alpha).
Real s_of(const Real& sh, const Real& t, const Real& pi) { return asinh(sh * sin(pi * t)) / pi; }
Real sprime_of(const Real& sh, const Real& t, const Real& pi) {
  const Real v = sh * sin(pi * t);
  return sh * cos(pi * t) / sqrt(1.0 + v * v);
}
// sinh(pi r) = sqrt(sin^2(pi t/2) + sh^2)
Real r_of(const Real& sh, const Real& t, const Real& pi) {
  const Real h = sin(pi * t / 2.0);
  return asinh(sqrt(h * h + sh * sh)) / pi;
}
Real rprime_of(const Real& r, const Real& t, const Real& pi) {
  return sin(pi * t) / (2.0 * sinh(2.0 * pi * r));
}

Real sinh_pi_alpha(const Real& eps) { return sqrt(eps - 4.0) / 2.0; }

}  // namespace

PathValues path_funcs(const Real& eps_in, const Real& t_in, const PrecCtx& ctx) {
  const Real eps = with_precision(eps_in, ctx.bits);
  if (!(eps > 4.0)) throw InvalidArgument("self-dual eps must exceed 4");
  const Real t = with_precision(t_in, ctx.bits);
  const Real pi = ctx.pi();
  const Real sh = sinh_pi_alpha(eps);
  PathValues v;
  v.s = s_of(sh, t, pi);
  v.sprime = sprime_of(sh, t, pi);
  v.r = r_of(sh, t, pi);
  v.rprime = rprime_of(v.r, t, pi);
  return v;
}

PeriodIntegrals period_integrals(const Real& eps_in, const PrecCtx& ctx, int order) {
  const Real eps = with_precision(eps_in, ctx.bits);
  if (!(eps > 4.0)) throw InvalidArgument("self-dual eps must exceed 4");
  const Real pi = ctx.pi();
  const Real sh = sinh_pi_alpha(eps);
  const GaussLegendre gl(order, ctx.bits);
  const Real tol = ctx.tol / 64.0;
  const Real zero(ctx.bits), half(0.5, ctx.bits), one(1L, ctx.bits);
  PeriodIntegrals p;
  // s'(t) / sinh(2 pi s(t + 1/2)) = 1 / (2 cosh(pi s(t)) cosh(pi s(t + 1/2))), no 0/0 at t = 1/2
  p.A = integrate(gl, [&](const Real& t) {
    const Real a = sh * sin(pi * t), b = sh * cos(pi * t);
    return 2.0 / sqrt((1.0 + a * a) * (1.0 + b * b));
  }, zero, half, tol);
  p.At = integrate(gl, [&](const Real& t) {
    return 4.0 * (asinh(sh * cos(pi * t)) / pi) * sprime_of(sh, t, pi);
  }, zero, half, tol);
  p.B = integrate(gl, [&](const Real& t) { return 1.0 / sinh(2.0 * pi * r_of(sh, t, pi)); }, zero, one, tol);
  p.Bt = integrate(gl, [&](const Real& t) { return r_of(sh, t, pi); }, zero, one, tol);
  return p;
}

Real level_function(const Real& eps, int n, const PrecCtx& ctx) {
  const PeriodIntegrals p = period_integrals(eps, ctx);
  return p.A * p.Bt / p.B - p.At - static_cast<double>(n + 1);
}

SelfDualSpectrum selfdual_record(const Real& eps_in, int n, const PrecCtx& ctx) {
  if (n < 0) throw InvalidArgument("level n must be non-negative");
  SelfDualSpectrum s;
  s.n = n;
  s.eps = with_precision(eps_in, ctx.bits);
  AlphaBeta ab = alpha_beta(s.eps, ctx);
  s.alpha = std::move(ab.alpha);
  s.beta = std::move(ab.beta);
  PeriodIntegrals p = period_integrals(s.eps, ctx);
  s.lambda = p.Bt / p.B;
  s.residual = s.lambda * p.A - p.At - static_cast<double>(n + 1);
  s.A = std::move(p.A);
  s.At = std::move(p.At);
  s.B = std::move(p.B);
  s.Bt = std::move(p.Bt);
  return s;
}

int LevelScan::sign_changes(int n) const {
  int count = 0;
  for (size_t i = 1; i < F0.size(); ++i)
    if (((F0[i - 1] - n) < 0) != ((F0[i] - n) < 0)) ++count;
  return count;
}

LevelScan scan_levels(int npoints) {
  if (npoints < 2) throw InvalidArgument("scan needs at least 2 points");
  const PrecCtx lo = PrecCtx::make(64, 1e-12);
  LevelScan scan;
  const double a = std::log(1e-2), b = std::log(1e6 - 4.0);
  for (int i = 0; i < npoints; ++i) {
    const double e = 4.0 + std::exp(a + (b - a) * i / (npoints - 1));
    scan.eps.push_back(e);
    scan.F0.push_back(level_function(Real(e, lo.bits), 0, lo).to_double());
  }
  return scan;
}

SelfDualSpectrum quantize_selfdual(int n, const PrecCtx& ctx) {
  if (n < 0) throw InvalidArgument("level n must be non-negative");
  const LevelScan scan = scan_levels();
  size_t k = scan.eps.size();
  for (size_t i = 1; i < scan.eps.size(); ++i)
    if ((scan.F0[i - 1] - n < 0) != (scan.F0[i] - n < 0)) {
      k = i;
      break;
    }
  if (k == scan.eps.size())
    throw NumericalError("no sign change of the level function for n = " + std::to_string(n) +
                         " on eps in [4.01, 1e6]");

  // Illinois at 64 bits, then secant at full precision
  const PrecCtx lctx = PrecCtx::make(64, 1e-12);
  Real a(scan.eps[k - 1], lctx.bits), b(scan.eps[k], lctx.bits);
  Real fa = level_function(a, n, lctx), fb = level_function(b, n, lctx);
  int side = 0;
  for (int it = 0; it < 200 && abs(b - a) > 1e-10 * abs(b); ++it) {
    const Real c = (a * fb - b * fa) / (fb - fa);
    const Real fc = level_function(c, n, lctx);
    if ((fc.sign() < 0) == (fb.sign() < 0)) {
      b = c;
      fb = fc;
      if (side == -1) fa /= 2.0;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == 1) fb /= 2.0;
      side = 1;
    }
    if (fc.is_zero()) break;
  }
  const Real lo(scan.eps[k - 1], ctx.bits), hi(scan.eps[k], ctx.bits);
  Real e0 = with_precision((a * fb - b * fa) / (fb - fa), ctx.bits);
  Real e1 = e0 * (1.0 + 1e-9);
  Real f0 = level_function(e0, n, ctx), f1 = level_function(e1, n, ctx);
  for (int it = 0; it < 40; ++it) {
    if (f1 == f0) break;
    const Real step = f1 * (e1 - e0) / (f1 - f0);
    Real e2 = e1 - step;
    if (!(e2 > lo && e2 < hi)) throw NumericalError("self-dual secant left the bracket");
    e0 = std::move(e1);
    f0 = std::move(f1);
    e1 = std::move(e2);
    f1 = level_function(e1, n, ctx);
    if (abs(step) <= ctx.tol * e1 / 16.0) break;
  }
  SelfDualSpectrum s = selfdual_record(e1, n, ctx);
  return s;
}

// ---------------------------------------------------------------- paths

Complex path_integral(const CurvePath& path, const Real& a, const Real& b, const Real& lambda,
                      const PrecCtx& ctx) {
  const GaussLegendre gl(32, ctx.bits);
  const Real twopi = ctx.pi() * 2.0;
  return integrate(gl, [&](const Real& tau) {
    const PathSample p = path(tau);
    return (p.x + lambda / sin(p.x * twopi)) * p.dy;
  }, with_precision(a, ctx.bits), with_precision(b, ctx.bits), ctx.tol / 64.0);
}

namespace {
Complex ic(const Real& v) { return Complex(Real(v.precision()), v); }
Complex rc(const Real& v) { return Complex(v); }
}  // namespace

CurvePath xi_path(const Real& eps_in, const PrecCtx& ctx) {
  const Real eps = with_precision(eps_in, ctx.bits);
  const Real sh = sinh_pi_alpha(eps), pi = ctx.pi();
  return [sh, pi](const Real& tau) {
    const Real t2 = tau + 0.5;
    return PathSample{ic(s_of(sh, t2, pi)), ic(s_of(sh, tau, pi)), ic(sprime_of(sh, t2, pi)),
                      ic(sprime_of(sh, tau, pi))};
  };
}

CurvePath zeta_path(const Real& eps_in, const PrecCtx& ctx) {
  const Real eps = with_precision(eps_in, ctx.bits);
  const Real sh = sinh_pi_alpha(eps), pi = ctx.pi();
  return [sh, pi](const Real& tau) {
    const Real r = r_of(sh, tau, pi);
    const Real rp = rprime_of(r, tau, pi);
    return PathSample{ic(r), rc(tau / 2.0), ic(rp), rc(Real(0.5, tau.precision()))};
  };
}

CurvePath reflect_x(CurvePath p) {
  return [p = std::move(p)](const Real& tau) {
    PathSample s = p(tau);
    return PathSample{-s.x, s.y, -s.dx, s.dy};
  };
}
CurvePath swap_xy(CurvePath p) {
  return [p = std::move(p)](const Real& tau) {
    PathSample s = p(tau);
    return PathSample{s.y, s.x, s.dy, s.dx};
  };
}
CurvePath reflect_y(CurvePath p) {
  return [p = std::move(p)](const Real& tau) {
    PathSample s = p(tau);
    return PathSample{s.x, -s.y, s.dx, -s.dy};
  };
}

namespace {

// Path beyond (i beta, 1/2): x = i t(v), y = 1/2 + i v with sinh(pi t)^2 = sinh(pi v)^2 + 1 + sh^2.
CurvePath beyond_path(const Real& sh, const Real& pi) {
  return [sh, pi](const Real& v) {
    const Real spv = sinh(pi * v);
    const Real t = asinh(sqrt(spv * spv + 1.0 + sh * sh)) / pi;
    const Real tp = sinh(2.0 * pi * v) / sinh(2.0 * pi * t);
    const Precision pr = v.precision();
    return PathSample{ic(t), Complex(Real(0.5, pr), v), ic(tp), Complex(Real(pr), Real(1L, pr))};
  };
}

struct Piece {
  CurvePath path;
  Real a, b;
};

struct Curve {
  const SelfDualSpectrum& spec;
  const PrecCtx& ctx;
  Real pi, sh, lambda, tol;
  GaussLegendre gl;

  Curve(const SelfDualSpectrum& s, const PrecCtx& c)
      : spec(s), ctx(c), pi(c.pi()), sh(sinh_pi_alpha(with_precision(s.eps, c.bits))),
        lambda(with_precision(s.lambda, c.bits)), tol(c.tol / 64.0), gl(32, c.bits) {}

  // Along xi: lambda / (2 cosh(pi s(tau)) cosh(pi s(tau + 1/2))) - s(tau + 1/2) s'(tau).
  Real xi_integral(const Real& tend) const {
    return integrate(gl, [&](const Real& tau) {
      const Real a = sh * sin(pi * tau), b = sh * cos(pi * tau);
      const Real ca = sqrt(1.0 + a * a), cb = sqrt(1.0 + b * b);
      return lambda / (2.0 * ca * cb) - (asinh(b) / pi) * (sh * cos(pi * tau) / ca);
    }, Real(ctx.bits), tend, tol);
  }
  // Along zeta: (1/2) (r - lambda / sinh(2 pi r)), times i.
  Real zeta_integral(const Real& tend) const {
    return integrate(gl, [&](const Real& tau) {
      const Real r = r_of(sh, tau, pi);
      return (r - lambda / sinh(2.0 * pi * r)) / 2.0;
    }, Real(ctx.bits), tend, tol);
  }
  // Beyond beta: lambda / sinh(2 pi t(v)) - t(v).
  Real beyond_integral(const Real& vend) const {
    return integrate(gl, [&](const Real& v) {
      const Real spv = sinh(pi * v);
      const Real t = asinh(sqrt(spv * spv + 1.0 + sh * sh)) / pi;
      return lambda / sinh(2.0 * pi * t) - t;
    }, Real(ctx.bits), vend, tol);
  }

  // Parameter values at which the canonical pieces reach x = i |t|.
  static Real clamp1(Real v) {
    if (v > 1.0) return Real(1L, v.precision());
    if (v < -1.0) return Real(-1L, v.precision());
    return v;
  }
  Real xi_tau(const Real& t) const { return acos(clamp1(sinh(pi * t) / sh)) / pi; }
  Real zeta_tau(const Real& at) const {
    const Real sp = sinh(pi * at);
    Real d2 = sp * sp - sh * sh;
    if (d2.sign() < 0) d2 = Real(ctx.bits);
    const Real d = min(sqrt(d2), Real(1L, ctx.bits));
    return 2.0 * atan2(d, sqrt(1.0 - d * d)) / pi;
  }
  Real beyond_v(const Real& at) const {
    const Real sp = sinh(pi * at);
    Real d2 = sp * sp - 1.0 - sh * sh;
    if (d2.sign() < 0) d2 = Real(ctx.bits);
    return asinh(sqrt(d2)) / pi;
  }

  CurvePoint canonical(const Real& t) const {
    const Real at = abs(t);
    CurvePoint p;
    p.x = ic(t);
    if (at <= spec.alpha) {
      const Real tau = xi_tau(t);
      const Real s = s_of(sh, tau, pi);
      p.integral = rc(xi_integral(tau));
      p.y = ic(s);
      p.w = ic(sinh(2.0 * pi * s));
      return p;
    }
    Complex ipos(ctx.bits);
    if (at <= spec.beta) {
      const Real tau = zeta_tau(at);
      ipos = ic(zeta_integral(tau));
      p.y = rc(tau / 2.0);
      p.w = rc(sin(pi * tau));
    } else {
      const Real v = beyond_v(at);
      ipos = ic(zeta_integral(Real(1L, ctx.bits))) + rc(beyond_integral(v));
      p.y = Complex(Real(0.5, ctx.bits), v);
      p.w = ic(-sinh(2.0 * pi * v));
    }
    // negative t: all of xi, then the image of the positive pieces under x -> -x
    p.integral = t.sign() < 0 ? rc(xi_integral(Real(1L, ctx.bits))) - ipos : ipos;
    return p;
  }

  std::vector<Piece> canonical_pieces(const Real& t) const {
    const Real at = abs(t);
    const Real zero(ctx.bits), one(1L, ctx.bits);
    const CurvePath xi = xi_path(spec.eps, ctx);
    if (at <= spec.alpha) return {{xi, zero, xi_tau(t)}};
    std::vector<Piece> pos;
    if (at <= spec.beta) {
      pos.push_back({zeta_path(spec.eps, ctx), zero, zeta_tau(at)});
    } else {
      pos.push_back({zeta_path(spec.eps, ctx), zero, one});
      pos.push_back({beyond_path(sh, pi), zero, beyond_v(at)});
    }
    if (t.sign() >= 0) return pos;
    std::vector<Piece> out{{xi, zero, one}};
    for (Piece& q : pos) out.push_back({reflect_x(q.path), q.a, q.b});
    return out;
  }

  // Continuation along x(tau) = xa + tau dx, tau in [0, 1].
  struct Panel {
    Complex sum;
    Complex w_end;
  };
  Complex w_at(const Complex& x, const Complex& prev) const {
    const Complex c = spec_half_eps() - cos(x * (pi * 2.0));
    Complex w = sqrt(1.0 - c * c);
    if (abs(w - prev) > abs(w + prev)) w = -w;
    return w;
  }
  Complex spec_half_eps() const { return rc(with_precision(spec.eps, ctx.bits) / 2.0); }

  Panel panel(const Complex& xa, const Complex& dx, const Real& lo, const Real& hi,
              const Complex& w_lo) const {
    Complex acc(ctx.bits), prev = w_lo;
    const Real twopi = pi * 2.0;
    for (int i = 0; i < gl.order(); ++i) {
      const Real tau = gl.node(i, lo, hi);
      const Complex x = xa + dx * tau;
      prev = w_at(x, prev);
      acc += (x * sin(x * twopi) + lambda) * dx / prev * gl.weights()[i];
    }
    Panel p{-acc * ((hi - lo) / 2.0), w_at(xa + dx * hi, prev)};
    return p;
  }

  Panel segment(const Complex& xa, const Complex& dx, const Real& lo, const Real& hi,
                const Complex& w_lo, const Panel& whole, int depth) const {
    const Real mid = (lo + hi) / 2.0;
    const Panel left = panel(xa, dx, lo, mid, w_lo);
    const Panel right = panel(xa, dx, mid, hi, left.w_end);
    const Complex both = left.sum + right.sum;
    const bool same_sheet = abs(right.w_end - whole.w_end) < abs(right.w_end + whole.w_end);
    if (same_sheet && abs(both - whole.sum) <= tol * (hi - lo)) return {both, right.w_end};
    if (depth >= 60)
      throw NumericalError("path continuation did not converge near x = " +
                           (xa + dx * lo).re.to_string(12) + " + " +
                           (xa + dx * lo).im.to_string(12) + "i");
    const Panel l = segment(xa, dx, lo, mid, w_lo, left, depth + 1);
    const Panel r = segment(xa, dx, mid, hi, l.w_end, panel(xa, dx, mid, hi, l.w_end), depth + 1);
    return {l.sum + r.sum, r.w_end};
  }

  CurvePoint continue_to(const CurvePoint& start, const std::vector<Complex>& waypoints) const {
    CurvePoint p = start;
    p.x = with_precision(p.x, ctx.bits);
    const Real zero(ctx.bits), one(1L, ctx.bits);
    for (const Complex& target : waypoints) {
      const Complex dx = with_precision(target, ctx.bits) - p.x;
      if (dx.is_zero()) continue;
      const Panel whole = panel(p.x, dx, zero, one, p.w);
      const Panel seg = segment(p.x, dx, zero, one, p.w, whole, 0);
      p.integral += seg.sum;
      p.w = seg.w_end;
      p.x = with_precision(target, ctx.bits);
    }
    // e^{2 pi i y} = cos(2 pi y) + i sin(2 pi y)
    const Complex c = spec_half_eps() - cos(p.x * (pi * 2.0));
    p.y = -times_i(log(c + times_i(p.w))) / (pi * 2.0);
    return p;
  }
};

void require_quantized(const SelfDualSpectrum& s, const PrecCtx& ctx) {
  const Real slack = ctx.tol * 1e6;
  const bool lam_ok = abs(s.lambda * s.B - s.Bt) <= slack * abs(s.Bt);
  const bool lev_ok = abs(s.residual) <= slack * static_cast<double>(s.n + 1);
  if (!lam_ok || !lev_ok)
    throw InvalidArgument("multivalued: eps = " + s.eps.to_string(20) +
                          " does not satisfy the quantization conditions");
}

Complex phi_raw(const Complex& x, const Curve& c) {
  CurvePoint p = c.canonical(x.im);
  if (!x.re.is_zero()) p = c.continue_to(p, {x});
  return sin(p.integral * (c.pi * 2.0)) / p.w;
}

}  // namespace

CurvePoint canonical_point(const Real& t, const SelfDualSpectrum& spec, const PrecCtx& ctx) {
  return Curve(spec, ctx).canonical(with_precision(t, ctx.bits));
}

CurvePoint continue_path(const CurvePoint& start, const std::vector<Complex>& waypoints,
                         const SelfDualSpectrum& spec, const PrecCtx& ctx) {
  return Curve(spec, ctx).continue_to(start, waypoints);
}

Complex phi_eval(const Complex& x_in, const SelfDualSpectrum& spec, const PrecCtx& ctx) {
  require_quantized(spec, ctx);
  const Curve c(spec, ctx);
  const Complex x = with_precision(x_in, ctx.bits);
  const Real delta = Real::pow2(-static_cast<long>(ctx.bits) / 5, ctx.bits);
  // y = 0 or 1/2 above t = +-alpha, +-beta: interpolate from offsets in t
  const Real* nearest = nullptr;
  Real best(1e300, ctx.bits);
  const Real ma = -spec.alpha, mb = -spec.beta;
  for (const Real* b : {&spec.alpha, &spec.beta, &ma, &mb}) {
    const Real d = abs(x.im - *b);
    if (d < best) {
      best = d;
      nearest = b;
    }
  }
  if (!(best < delta * 4.0)) return phi_raw(x, c);
  const std::array<double, 4> nodes{-8.0, -4.0, 4.0, 8.0};
  const Real t0 = with_precision(*nearest, ctx.bits);
  const Real u = (x.im - t0) / delta;
  Complex acc(ctx.bits);
  for (size_t i = 0; i < nodes.size(); ++i) {
    Real w(1L, ctx.bits);
    for (size_t j = 0; j < nodes.size(); ++j)
      if (j != i) w = w * (u - nodes[j]) / (nodes[i] - nodes[j]);
    acc += phi_raw(Complex(x.re, t0 + delta * nodes[i]), c) * w;
  }
  return acc;
}

Real harper_residual(const Complex& x_in, const SelfDualSpectrum& spec, const PrecCtx& ctx) {
  const Complex x = with_precision(x_in, ctx.bits);
  const Complex m = phi_eval(x - 1.0, spec, ctx);
  const Complex p = phi_eval(x + 1.0, spec, ctx);
  const Complex f = phi_eval(x, spec, ctx);
  const Complex k = cos(x * (ctx.pi() * 2.0)) * 2.0 - with_precision(spec.eps, ctx.bits);
  const Real scale = abs(m) + abs(p) + abs(k * f);
  return scale.is_zero() ? Real(ctx.bits) : abs(m + p + k * f) / scale;
}

CycleIntegrals cycle_integrals(const SelfDualSpectrum& spec, const PrecCtx& ctx) {
  const Real lambda = with_precision(spec.lambda, ctx.bits);
  const Real zero(ctx.bits), half(0.5, ctx.bits), one(1L, ctx.bits);
  const CurvePath xi = xi_path(spec.eps, ctx);
  const CurvePath xi_check = reflect_x(reflect_y(xi));
  CycleIntegrals c;
  // x passes through 0 at tau = 1/2; split there so it is an endpoint
  c.xi_cycle = path_integral(xi, zero, half, lambda, ctx) + path_integral(xi, half, one, lambda, ctx) +
               path_integral(xi_check, zero, half, lambda, ctx) +
               path_integral(xi_check, half, one, lambda, ctx);
  const CurvePath zeta = zeta_path(spec.eps, ctx);
  const CurvePath zeta_hat = [zeta](const Real& tau) {
    PathSample s = zeta(1.0 - tau);
    return PathSample{s.x, Complex(Real(0.5, tau.precision()), Real(tau.precision())) + tau / 2.0,
                      -s.dx, s.dy};
  };
  c.zeta_cycle = path_integral(zeta, zero, one, lambda, ctx) + path_integral(zeta_hat, zero, one, lambda, ctx);
  return c;
}

BlochJostReport bloch_jost_check(const Real& t1_in, const Real& t2_in, const SelfDualSpectrum& spec,
                                 const PrecCtx& ctx) {
  const Curve c(spec, ctx);
  const Real t1 = with_precision(t1_in, ctx.bits), t2 = with_precision(t2_in, ctx.bits);
  const Real twopi = c.pi * 2.0;
  auto e2pii = [&](const Complex& z) { return exp(times_i(z * twopi)); };
  BlochJostReport r;

  const CurvePoint p0 = c.canonical(t1);
  const CurvePoint p1 = c.continue_to(p0, {p0.x + 1.0});
  if (abs(p1.w - p0.w) <= abs(p1.w + p0.w))
    r.shift_error = abs(e2pii(p1.integral - p0.integral - p0.y) - 1.0);
  else
    r.shift_error = abs(e2pii(p1.integral + p0.integral + p0.y) - 1.0);

  const CurvePoint direct = c.canonical(t2);
  const Real side(0.3, ctx.bits);
  const CurvePoint detour =
      c.continue_to(p0, {Complex(side, t1), Complex(side, t2), Complex(Real(ctx.bits), t2)});
  r.homotopy_error = abs(e2pii(detour.integral - direct.integral) - 1.0) +
                     abs(detour.w - direct.w) / abs(direct.w);

  Complex refl(ctx.bits);
  for (const Piece& q : c.canonical_pieces(t1))
    refl += path_integral(reflect_y(q.path), q.a, q.b, c.lambda, ctx);
  r.inverse_error = abs(e2pii(p0.integral + refl) - 1.0);
  return r;
}

}  // namespace mirspec
