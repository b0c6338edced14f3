#include "mirspec/verify.hpp"

#include <cmath>
#include <sstream>

#include "mirspec/error.hpp"
#include "mirspec/transfer.hpp"

namespace mirspec {

Complex Rng::polar(double rmin, double rmax, Precision prec) {
  const double r = uniform(rmin, rmax), phi = uniform(0.0, 2.0 * M_PI);
  return Complex(r * std::cos(phi), r * std::sin(phi), prec);
}

Complex Rng::box(double half_width, Precision prec) {
  const double re = uniform(-half_width, half_width);
  return Complex(re, uniform(-half_width, half_width), prec);
}

namespace {

// Worst value seen, with where it happened.
struct Worst {
  double value = 0;
  std::string where;
  void add(double v, const std::string& w) {
    if (!(v <= value)) {  // also catches NaN
      value = v;
      where = w;
    }
  }
};

double dbl(const Real& x) { return x.to_double(); }

std::string fmt(const Complex& z) {
  std::ostringstream os;
  os << z.re.to_double() << (z.im.sign() < 0 ? "" : "+") << z.im.to_double() << "i";
  return os.str();
}

Real scale2(long l, Precision prec) { return Real::pow2(l, prec); }

CheckResult finish(std::string name, const Worst& w, double bound, std::string extra = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.measure = w.value;
  r.bound = bound;
  r.passed = w.value <= bound;
  r.detail = w.where;
  if (!extra.empty()) r.detail += (r.detail.empty() ? "" : "; ") + extra;
  return r;
}

double ten_tol(const PrecCtx& ctx, double k = 10.0) { return dbl(ctx.tol) * k; }

}  // namespace

CheckResult check_functional_equations(const ModularParam& mp, const PrecCtx& ctx, Rng& rng,
                                       int npoints) {
  const Complex q2 = mp.q * mp.q;
  const Complex q2inv = 1.0 / q2;
  Worst w;
  int skipped = 0;
  for (int i = 0; i < npoints; ++i) {
    const Complex u = rng.polar(0.3, 2.0, ctx.bits);
    const Complex eps = rng.box(6.0, ctx.bits);
    const std::string where = "u=" + fmt(u) + " eps=" + fmt(eps);
    ChiSeries cs(eps, mp, ctx);
    const Complex k = 1.0 - eps * u + u * u;
    const Complex c2 = q2 * u * u;
    // chi and chi-check: residual against the cancellation scale of the three terms
    for (int check = 0; check < 2; ++check) {
      auto f = [&](const Complex& z) { return check == 0 ? cs.eval(z) : cs.eval_check(z); };
      const ValueDeriv a = f(u * q2inv), b = f(q2 * u), c = f(u);
      const Complex res = a.value + c2 * b.value - k * c.value;
      const Real scale = scale2(a.lscale, ctx.bits) + abs(c2) * scale2(b.lscale, ctx.bits) +
                         abs(k) * scale2(c.lscale, ctx.bits);
      w.add(dbl(abs(res) / scale), (check == 0 ? "chi " : "chi-check ") + where);
    }
    // dual solution f(q^2 u) + q^-2 u^2 f(q^-2 u) = (1 - eps u + u^2) f(u)
    try {
      auto dual = [&](const Complex& z, Real& kappa) {
        const ValueDeriv ck = cs.eval_check(z);
        const ValueDeriv wr = cs.wronskian(z);
        if (below_zero_floor(wr.value, wr.lscale, ctx)) throw PoleError("dual pole");
        const long loss = std::max({0L, ck.lscale - lmag(ck.value), wr.lscale - lmag(wr.value)});
        kappa = scale2(loss, ctx.bits);
        return ck.value / wr.value;
      };
      Real ka(ctx.bits), kb(ctx.bits), kc(ctx.bits);
      const Complex fa = dual(q2 * u, ka), fb = dual(u * q2inv, kb), fc = dual(u, kc);
      const Complex cb = u * u * q2inv;
      const Complex res = fa + cb * fb - k * fc;
      const Real scale = abs(fa) * ka + abs(cb * fb) * kb + abs(k * fc) * kc;
      w.add(dbl(abs(res) / scale), "dual " + where);
    } catch (const PoleError&) {
      ++skipped;
    }
  }
  return finish("functional equations (chi, chi-check, dual)", w, ten_tol(ctx),
                skipped ? std::to_string(skipped) + " points at dual poles skipped" : "");
}

CheckResult check_oracle_grid(const ModularParam& mp, const PrecCtx& ctx, int n) {
  const Complex q2inv = 1.0 / (mp.q * mp.q);
  Worst w;
  for (int i = 0; i < n; ++i) {
    const double r = 0.15 + 1.85 * i / std::max(1, n - 1), phi = 2.399963229728653 * i;
    const Complex u(r * std::cos(phi), r * std::sin(phi), ctx.bits);
    for (int j = 0; j < n; ++j) {
      const Complex eps(-8.0 + 16.0 * j / std::max(1, n - 1), 3.0 * std::sin(1.7 * j), ctx.bits);
      const ChiPair m = chi_via_Minf(u, eps, mp, ctx);
      const ValueDeriv a = chi_eval(u, eps, mp, ctx);
      const ValueDeriv b = chi_eval(u * q2inv, eps, mp, ctx);
      const std::string where = "u=" + fmt(u) + " eps=" + fmt(eps);
      w.add(dbl(abs(m.chi_at_u - a.value) / max(abs(a.value), scale2(a.lscale, ctx.bits))), where);
      w.add(dbl(abs(m.chi_at_u_over_q2 - b.value) / max(abs(b.value), scale2(b.lscale, ctx.bits))),
            "u/q^2, " + where);
    }
  }
  return finish("series vs transfer-matrix oracle, " + std::to_string(n) + "x" + std::to_string(n) + " grid",
                w, ten_tol(ctx));
}

CheckResult check_multiplication(const ModularParam& mp, const PrecCtx& ctx, int nmax) {
  Worst w;
  for (const Complex& eps : {Complex(2.5, -1.1, ctx.bits), Complex(-0.7, 3.2, ctx.bits)})
    for (int m = 0; m <= nmax; ++m)
      for (int n = 0; n <= nmax; ++n)
        w.add(dbl(chi_mult_check(m, n, eps, mp, ctx)),
              "m=" + std::to_string(m) + " n=" + std::to_string(n) + " eps=" + fmt(eps));
  return finish("multiplication rule, m, n <= " + std::to_string(nmax), w, ten_tol(ctx));
}

CheckResult check_wronskian(const ModularParam& mp, const PrecCtx& ctx, Rng& rng, int npoints) {
  const Complex q2 = mp.q * mp.q;
  Worst w;
  for (int i = 0; i < npoints; ++i) {
    const Complex u = rng.polar(0.3, 2.0, ctx.bits);
    const Complex eps = rng.box(6.0, ctx.bits);
    ChiSeries cs(eps, mp, ctx);
    const ValueDeriv a = cs.wronskian(q2 * u), b = cs.wronskian(u);
    const Complex c = q2 * u * u;
    const Real scale = abs(c) * scale2(a.lscale, ctx.bits) + scale2(b.lscale, ctx.bits);
    w.add(dbl(abs(c * a.value - b.value) / scale), "W(q^2 u) u=" + fmt(u) + " eps=" + fmt(eps));
  }
  // residue: series against the contour average; lower bound for real eps when q is real
  const bool real_q = abs(mp.q.im) <= ctx.tol * 16.0 && mp.q.re.sign() > 0;
  const Real lower = 1.0 - mp.q.re * mp.q.re;
  std::string bound_note;
  bool bound_ok = true;
  for (double e : {-3.0, 0.0, 1.5, 4.0, 9.5}) {
    const Complex eps(e, 0.0, ctx.bits);
    const Complex rs = wronskian_residue_series(eps, mp, ctx);
    const Complex rc = wronskian_residue_contour(eps, mp, ctx);
    w.add(dbl(abs(rs - rc) / max(abs(rs), Real(1L, ctx.bits))), "residue eps=" + std::to_string(e));
    if (real_q && !(rs.re >= lower && abs(rs.im) <= ctx.tol * 1e3)) {
      bound_ok = false;
      bound_note = "residue below 1 - q^2 at eps=" + std::to_string(e);
    }
  }
  CheckResult r = finish("Wronskian relation and residue", w, ten_tol(ctx, 1e3),
                         real_q ? (bound_ok ? "residue >= 1 - q^2 for real eps" : bound_note)
                                : "q not real: lower bound not applicable");
  r.passed = r.passed && bound_ok;
  return r;
}

CheckResult check_theta(const ModularParam& mp, const PrecCtx& ctx, Rng& rng, int npoints) {
  const Complex L = mp.log_q;
  const Real twopi = ctx.pi() * 2.0;
  Worst w;
  w.add(dbl(abs(theta1(Complex(ctx.bits), L, ctx))), "theta1(1) = 0");
  for (int i = 0; i < npoints; ++i) {
    const Complex z = rng.box(2.0, ctx.bits);
    const Complex t = theta1(z, L, ctx);
    const Complex tm = theta1(-z, L, ctx);
    const Complex ts = theta1(z + L * 2.0, L, ctx);
    const Real scale = max(Real(1L, ctx.bits), max(abs(t), abs(ts)));
    const std::string where = "w=" + fmt(z);
    w.add(dbl(abs(tm + t) / scale), "inversion " + where);
    // theta1(q^2 u) = -(1/(q u)) theta1(u)
    w.add(dbl(abs(ts + exp(-L - z) * t) / scale), "q^2 shift " + where);
  }
  // conjugation: the barred side is the same series at (ubar, qbar) with 1/i conjugated as well
  const Complex b = mp.b, bi = 1.0 / mp.b;
  for (int i = 0; i < std::max(8, npoints / 10); ++i) {
    const Real x(rng.uniform(-1.5, 1.5), ctx.bits);
    const Complex t = theta1(b * x * twopi, L, ctx);
    const Complex tb = -theta1(bi * x * twopi, mp.log_qbar, ctx);
    const Complex ph = times_i(Complex(ctx.pi() / 4.0 - ctx.pi() * x * x, Real(ctx.bits)));
    const Complex rhs = b * exp(ph) * t;
    const Real scale = max(Real(1L, ctx.bits), abs(rhs));
    w.add(dbl(abs(tb - rhs) / scale), "modular x=" + x.to_string(8));
    w.add(dbl(abs(conj(t) - rhs) / scale), "modular (literal conjugate) x=" + x.to_string(8));
  }
  return finish("theta identities", w, ten_tol(ctx));
}

CheckResult check_crochet(const ModularParam& mp, const PrecCtx& ctx, Rng& rng, int npoints) {
  const Complex q2 = mp.q * mp.q;
  Worst w;
  int skipped = 0;
  for (int i = 0; i < npoints; ++i) {
    const Complex u = rng.polar(0.3, 1.5, ctx.bits);
    const Complex eps = rng.box(5.0, ctx.bits);
    const std::string where = "u=" + fmt(u) + " eps=" + fmt(eps);
    ChiSeries cs(eps, mp, ctx);
    try {
      const Complex du = chi_dual_eval(cs, u), dq = chi_dual_eval(cs, q2 * u);
      const Complex a = cs.eval(u).value * dq;
      const Complex b = q2 * u * u * du * cs.eval(q2 * u).value;
      w.add(dbl(abs(a - b - 1.0) / max(Real(1L, ctx.bits), abs(a) + abs(b))), "crochet1 " + where);
      // P of chi-check equals the ratio of dual values
      const Complex pc = q2 * u * u * cs.eval_check(q2 * u).value / cs.eval_check(u).value;
      const Complex pd = dq / du;
      w.add(dbl(abs(pc - pd) / max(abs(pc), abs(pd))), "crochet2 " + where);
    } catch (const PoleError&) {
      ++skipped;
    }
  }
  // chi_{q^-1}(q^{2n} z) -> 1
  {
    const Complex z(0.8, 0.3, ctx.bits), eps(1.7, -0.4, ctx.bits);
    ChiSeries cs(eps, mp, ctx);
    Complex zn = z;
    for (int k = 0; k < 12; ++k) zn = zn * q2;
    const double lim = dbl(abs(chi_dual_eval(cs, zn) - 1.0));
    if (lim > 1e-6) w.add(1e300, "dual solution does not tend to 1 along q^{2n} z");
  }
  return finish("crochet identities", w, ten_tol(ctx, 1e3),
                skipped ? std::to_string(skipped) + " points at dual poles skipped" : "");
}

CheckResult check_limits(const ModularParam& mp, const PrecCtx& ctx, Rng& rng, int ntraj) {
  const Complex q2 = mp.q * mp.q;
  const Complex q2inv = 1.0 / q2;
  int wrong = 0, total = 0;
  std::string first;
  auto expect = [&](const ROrbit& o, OrbitLimit want, const std::string& what) {
    ++total;
    if (o.limit != want) {
      ++wrong;
      if (first.empty())
        first = what + ": got " + orbit_limit_name(o.limit) + ", expected " + orbit_limit_name(want);
    }
  };
  const long steps = 16;
  for (int i = 0; i < ntraj; ++i) {
    const Complex z = rng.polar(0.3, 1.2, ctx.bits);
    const Complex eps = rng.box(4.0, ctx.bits);
    const std::string where = " z=" + fmt(z) + " eps=" + fmt(eps);
    ChiSeries cs(eps, mp, ctx);
    const Complex cz = cs.eval(z).value;
    const Complex rchi = cs.eval(z * q2inv).value / cz;
    const Complex pchi = q2 * z * z * cs.eval(q2 * z).value / cz;
    const Complex pcheck = q2 * z * z * cs.eval_check(q2 * z).value / cs.eval_check(z).value;
    if (i % 5 == 0) {
      expect(R_orbit(z, rchi, steps, eps, mp, ctx), OrbitLimit::one, "R on chi" + where);
      expect(P_orbit(z, pchi, steps, eps, mp, ctx), OrbitLimit::zero, "P on chi" + where);
    } else {
      const Complex d = rng.polar(0.05, 0.5, ctx.bits);
      expect(R_orbit(z, rchi + d, steps, eps, mp, ctx), OrbitLimit::zero, "R generic" + where);
      expect(P_orbit(z, pchi + d, steps, eps, mp, ctx), OrbitLimit::one, "P generic" + where);
    }
    if (i % 5 == 1) expect(P_orbit(z, pcheck, steps, eps, mp, ctx), OrbitLimit::one, "P on chi-check" + where);
  }
  CheckResult r;
  r.name = "limit classification on " + std::to_string(total) + " trajectories";
  r.measure = wrong;
  r.bound = 0;
  r.passed = wrong == 0;
  r.detail = first;
  return r;
}

std::vector<SpectralPoint> quantized_states(int nsheets, const ModularParam& mp, const PrecCtx& ctx) {
  std::vector<SpectralPoint> out;
  for (int k = 1; k <= nsheets; ++k) {
    const Orbit orbit = trace_orbit(k, 64, mp, ctx);
    for (int parity : {1, -1})
      for (SpectralPoint& p : quantize(orbit, parity, mp, ctx).states) out.push_back(std::move(p));
  }
  return out;
}

CheckResult check_eigenfunctions(const std::vector<SpectralPoint>& states, const ModularParam& mp,
                                 const PrecCtx& ctx, Rng& rng, int nparity, bool fault) {
  Worst w;
  const double tol3 = ten_tol(ctx, 1e3);
  const Real twopi = ctx.pi() * 2.0;
  std::string decay;
  for (const SpectralPoint& st0 : states) {
    SpectralPoint st = st0;
    const std::string tag = "sheet " + std::to_string(st.sheet) + (st.parity > 0 ? " even" : " odd") +
                            " sigma=" + st.sigma.to_string(10);
    const EigenfunctionParams p = EigenfunctionParams::make(st, mp, ctx);
    const double xi = st.parity;
    for (int i = 0; i < nparity; ++i) {
      const Complex x(rng.uniform(-2.5, 2.5), 0.0, ctx.bits);
      const Complex a = psi_eval(x, p, ctx), b = psi_eval(-x, p, ctx);
      const Real scale = max(abs(a), abs(b));
      if (scale.is_zero()) continue;
      w.add(dbl(abs(b - a * xi) / scale), "parity " + tag + " x=" + x.re.to_string(8));
      w.add(dbl(abs(a.im) / scale), "reality " + tag + " x=" + x.re.to_string(8));
    }
    for (double xv : {0.3, -0.7, 1.1}) {
      const PsiResidual r = psi_residual(Real(xv, ctx.bits), p, ctx);
      w.add(dbl(r.r1), "shift i b residual " + tag);
      w.add(dbl(r.r2), "shift i/b residual " + tag);
    }
    // log|psi| + 2 pi eta x over [3, 6]
    double lo = 1e300, hi = -1e300;
    for (double xv : {3.0, 4.0, 5.0, 6.0}) {
      const Complex v = psi_eval(Complex(xv, 0.0, ctx.bits), p, ctx);
      const double g = dbl(log(abs(v)) + p.eta.re * twopi * xv);
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
    if (!(hi - lo <= 4.0)) decay = "decay spread " + std::to_string(hi - lo) + " at " + tag;
    // leading shift asymptotics as x -> -inf hold per ansatz component:
    // the chi-check-first part with +ib, the chi-first part with -ib
    double prev = 1e300;
    for (double xv : {-4.0, -6.0, -8.0}) {
      const Complex x(xv, 0.0, ctx.bits);
      const Complex e = -exp(-(mp.b * x * twopi));
      double dev = 0;
      for (const auto& [part, sg] : {std::pair{PsiPart::chi_check_first, 1.0}, std::pair{PsiPart::chi_first, -1.0}}) {
        const Complex r = psi_eval(x + times_i(mp.b) * sg, p, ctx, part) / (e * psi_eval(x, p, ctx, part));
        dev = std::max(dev, dbl(abs(r - 1.0)));
      }
      if (!(dev < prev)) decay = "shift asymptotics not improving at x=" + std::to_string(xv) + " for " + tag;
      prev = dev;
    }
    if (!(prev < 1e-10)) decay = "shift asymptotics off by " + std::to_string(prev) + " at x=-8 for " + tag;
    if (fault) st.eps = st.eps + Complex(1e-5, 0.0, ctx.bits);
    const PoleReport pr = pole_cancellation_check(EigenfunctionParams::make(st, mp, ctx), ctx);
    w.add(dbl(pr.max_normalized), "pole cancellation " + tag);
  }
  if (!decay.empty()) w.add(1e300, decay);
  return finish("eigenfunction parity, reality, decay, shifts, poles at " + std::to_string(states.size()) +
                    " states", w, tol3);
}

CheckResult check_selfdual(const SelfDualSpectrum& spec, const PrecCtx& ctx, double harper_bound) {
  Worst w;
  const double tol3 = ten_tol(ctx, 1e3);
  const Real level = spec.lambda * spec.A - spec.At;
  w.add(dbl(abs(level - level.to_long() * 1.0)), "A lambda - At integrality");
  w.add(dbl(abs(spec.Bt - spec.lambda * spec.B)), "Bt - lambda B");
  const CycleIntegrals cy = cycle_integrals(spec, ctx);
  w.add(dbl(abs(cy.xi_cycle - static_cast<double>(spec.n + 1))), "xi cycle");
  w.add(dbl(abs(cy.zeta_cycle)), "zeta cycle");
  const Real a = spec.alpha, b = spec.beta;
  const std::vector<std::pair<Real, Real>> pairs{
      {a * 0.2, a * 0.6}, {-(a * 0.6), -(a * 0.2)}, {a + (b - a) * 0.3, a + (b - a) * 0.7},
      {b + 0.2, b + 0.4}, {-(b + 0.4), -(b + 0.2)}};
  for (const auto& [t1, t2] : pairs) {
    const BlochJostReport r = bloch_jost_check(t1, t2, spec, ctx);
    const std::string where = " t=" + t1.to_string(6);
    w.add(dbl(r.shift_error), "x -> x+1 quasi-periodicity" + where);
    w.add(dbl(r.homotopy_error), "homotopic paths" + where);
    w.add(dbl(r.inverse_error), "f(x,y) f(x,-y)" + where);
  }
  // reflections of the zeta path
  {
    const Real zero(ctx.bits), one(1L, ctx.bits);
    const CurvePath z = zeta_path(spec.eps, ctx);
    const Complex iz = path_integral(z, zero, one, spec.lambda, ctx);
    const Complex ir = path_integral(reflect_x(z), zero, one, spec.lambda, ctx);
    const Complex is = path_integral(swap_xy(z), zero, one, spec.lambda, ctx);
    const PathSample s0 = z(zero), s1 = z(one);
    w.add(dbl(abs(ir + iz)), "x -> -x reflection");
    w.add(dbl(abs(is - (s1.x * s1.y - s0.x * s0.y - iz))), "x <-> y swap");
  }
  const bool harper_ok = [&] {
    Worst h;
    for (int k = 0; k < 20; ++k) {
      const Real t(-0.95 + 0.1 * k, ctx.bits);
      const Complex x(Real(ctx.bits), t);
      h.add(dbl(harper_residual(x, spec, ctx)), "Harper t=" + t.to_string(4));
      // phi(i t) against phi(-i t): equal up to (-1)^n
      const Complex f = phi_eval(x, spec, ctx), g = phi_eval(-x, spec, ctx);
      w.add(dbl(abs(g - f * (spec.n % 2 ? -1.0 : 1.0)) / abs(f)), "phi(-it) vs phi(it) t=" + t.to_string(4));
    }
    if (h.value > harper_bound) {
      w.add(1e300, h.where + " residual " + std::to_string(h.value));
      return false;
    }
    return true;
  }();
  CheckResult r = finish("self-dual cycles, Harper residual, Bloch-Jost (n=" + std::to_string(spec.n) + ")", w,
                         tol3);
  r.passed = r.passed && harper_ok;
  return r;
}

std::vector<CheckResult> run_verify(const VerifyOptions& opt, const Progress& progress) {
  const PrecCtx ctx = opt.quick ? PrecCtx::make(64, "1e-10") : PrecCtx::make(opt.bits, opt.tol);
  const ModularParam mp = opt.theta.empty() ? ModularParam::pi_over_4(ctx)
                                            : ModularParam::make(ctx.real(opt.theta), ctx);
  Rng rng(opt.seed);
  const bool q = opt.quick;
  std::vector<CheckResult> out;
  auto run = [&](const std::string& name, const std::function<CheckResult()>& f) {
    CheckResult r;
    try {
      r = f();
    } catch (const Error& e) {
      r.name = name;
      r.passed = false;
      r.measure = 1e300;
      r.detail = std::string(status_name(e.status())) + ": " + e.what();
    }
    if (progress) progress(r);
    out.push_back(std::move(r));
  };
  run("functional equations", [&] { return check_functional_equations(mp, ctx, rng, q ? 20 : 100); });
  run("oracle grid", [&] { return check_oracle_grid(mp, ctx, q ? 8 : 20); });
  run("multiplication rule", [&] { return check_multiplication(mp, ctx, q ? 6 : 10); });
  run("Wronskian", [&] { return check_wronskian(mp, ctx, rng, q ? 10 : 30); });
  run("theta identities", [&] { return check_theta(mp, ctx, rng, q ? 100 : 1000); });
  run("crochet identities", [&] { return check_crochet(mp, ctx, rng, q ? 10 : 30); });
  // the exceptional trajectory is unstable; at 64 bits it cannot get within the 1e-6 margin of 1
  run("limit classification", [&] {
    const PrecCtx wide = ctx.bits >= 128 ? ctx : PrecCtx::make(128, ctx.tol);
    const ModularParam wmp = ModularParam::make(with_precision(mp.theta, wide.bits), wide);
    return check_limits(wmp, wide, rng, q ? 20 : 50);
  });
  run("eigenfunctions", [&] {
    const auto states = quantized_states(q ? 1 : opt.sheets, mp, ctx);
    return check_eigenfunctions(states, mp, ctx, rng, q ? 10 : 50, opt.fault);
  });
  run("self-dual", [&] {
    const PrecCtx sd = q ? ctx : PrecCtx::make(opt.bits, Real(opt.selfdual_tol, opt.bits));
    const SelfDualSpectrum spec = quantize_selfdual(0, sd);
    return check_selfdual(spec, sd, q ? ten_tol(sd, 1e3) : 1e-20);
  });
  return out;
}

}  // namespace mirspec
