#include "mirspec/spectral.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "mirspec/error.hpp"

namespace mirspec {

ValueDeriv wronskian_eval(const Complex& u, const Complex& eps, const ModularParam& mp,
                          const PrecCtx& ctx) {
  ChiSeries cs(eps, mp, ctx);
  return cs.wronskian(u);
}

Complex wronskian_residue_series(const Complex& eps, const ModularParam& mp, const PrecCtx& ctx) {
  ChiSeries cs(eps, mp, ctx);
  const Complex q = with_precision(mp.q, ctx.bits);
  const Complex q2 = q * q;
  Complex qm2m(Real(1L, ctx.bits), Real(ctx.bits));  // q^{-2m}
  Complex q2m2 = q2;                                 // q^{2m+2}
  const Complex qm2 = 1.0 / q2;
  Complex sum(ctx.bits);
  const long lt = ctx.tol_log2();
  long big = 1;
  int small = 0;
  for (long m = 0; m < ctx.max_terms; ++m) {
    const Complex& c = cs.coeff(m);
    const Complex t = c * c * (qm2m - q2m2);
    sum += t;
    big = std::max(big, lmag(t));
    small = lmag(t) < std::max(lmag(sum), big) + lt - 1 ? small + 1 : 0;
    if (small >= 3) return sum;
    qm2m *= qm2;
    q2m2 *= q2;
  }
  throw NumericalError("residue series: max_terms reached");
}

Complex wronskian_residue_contour(const Complex& eps, const ModularParam& mp, const PrecCtx& ctx,
                                  int npoints) {
  if (npoints < 4) throw InvalidArgument("residue contour needs at least 4 points");
  ChiSeries cs(eps, mp, ctx);
  Complex sum(ctx.bits);
  const Real twopi = ctx.pi() * 2.0;
  for (int j = 0; j < npoints; ++j) {
    const Real t = twopi * Real(static_cast<long>(j), ctx.bits) / Real(static_cast<long>(npoints), ctx.bits);
    const Complex u(cos(t), sin(t));
    sum += u * cs.wronskian(u).value;
  }
  return sum / Real(static_cast<long>(npoints), ctx.bits);
}

Complex s_of_sigma(const Real& sigma, const ModularParam& mp) {
  return exp(mp.b * (Real::pi(sigma.precision()) * 2.0 * sigma));
}

SolveResult solve_eps(const Real& sigma, const Complex& eps0, const ModularParam& mp,
                      const PrecCtx& ctx, int max_iter) {
  const Complex s = s_of_sigma(with_precision(sigma, ctx.bits), mp);
  const Complex q = with_precision(mp.q, ctx.bits);
  SolveResult r;
  r.eps = with_precision(eps0, ctx.bits);
  auto wr = [&](const Complex& e) {
    ChiSeries cs(e, q, ctx);
    return cs.wronskian(s);
  };
  ValueDeriv w = wr(r.eps);
  r.residuals.push_back(abs(w.value));
  if (w.value.is_zero()) return r;
  for (int it = 1; it <= max_iter; ++it) {
    if (w.deps.is_zero() || lmag(w.deps) < w.lscale + ctx.tol_log2() - 64)
      throw NumericalError("solve_eps: dW/deps vanishes (near branch point) at sigma = " +
                           sigma.to_string(12));
    Complex step = w.value / w.deps;
    Complex trial = r.eps - step;
    ValueDeriv wt = wr(trial);
    // damping: halve until |W| decreases (at most 10 halvings)
    for (int h = 0; h < 10 && abs(wt.value) > abs(w.value) &&
                    !below_zero_floor(wt.value, wt.lscale, ctx);
         ++h) {
      step *= 0.5;
      trial = r.eps - step;
      wt = wr(trial);
    }
    r.eps = std::move(trial);
    w = std::move(wt);
    r.iterations = it;
    r.residuals.push_back(abs(w.value));
    const Real scale = max(Real(1L, ctx.bits), abs(r.eps));
    if (abs(step) <= ctx.tol * scale * 1e-3 || w.value.is_zero()) return r;
    if (abs(step) <= ctx.tol * scale && below_zero_floor(w.value, w.lscale, ctx)) return r;
  }
  throw NumericalError("solve_eps: Newton did not converge at sigma = " + sigma.to_string(12));
}

namespace {

struct SeedSeries {
  int sheet;
  Endpoint end;
  int prefactor_power;  // q^p in front
  int sign;
  std::vector<std::pair<int, int>> terms;  // (power of q, coefficient)
};

const std::vector<SeedSeries>& seed_table() {
  static const std::vector<SeedSeries> t = {
      {1, Endpoint::zero, 0, 1,
       {{0, 2}, {2, -2}, {4, -4}, {6, -2}, {8, 14}, {10, 50}, {12, 40}, {14, -268}, {16, -1136}}},
      {2, Endpoint::zero, -2, 1,
       {{0, 1}, {4, 1}, {6, -1}, {8, -1}, {10, -1}, {12, -2}, {14, -1}, {18, 1}, {20, 6}, {22, 11}}},
      {3, Endpoint::zero, -2, 1,
       {{0, 1}, {4, 3}, {6, 3}, {8, 1}, {10, -15}, {12, -52}, {14, -43}, {16, 264}, {18, 1127}}},
      {4, Endpoint::zero, -4, 1, {{0, 1}, {8, 2}, {14, 1}, {18, -1}, {20, -3}, {22, -8}, {24, -13}}},
      {6, Endpoint::zero, -6, 1, {{0, 1}, {12, 2}, {22, 1}, {24, 1}, {26, 1}, {32, 2}, {34, 2}}},
      {1, Endpoint::sin_theta, -1, -1,
       {{0, 1}, {1, -1}, {2, 1}, {4, -1}, {6, -1}, {7, 1}, {8, -2}, {9, 2}, {10, -2}, {11, 5}, {12, -4}}},
      {2, Endpoint::sin_theta, -1, -1,
       {{0, 1}, {1, 1}, {2, 1}, {4, -1}, {6, -1}, {7, -1}, {8, -2}, {9, -2}, {10, -2}, {11, -5}, {12, -4}}},
  };
  return t;
}

const SeedSeries* find_seed(int k, Endpoint e) {
  for (const auto& s : seed_table())
    if (s.sheet == k && s.end == e) return &s;
  return nullptr;
}

}  // namespace

bool sheet_seed_is_series(int k, Endpoint e) { return find_seed(k, e) != nullptr; }

Complex sheet_seed(int k, Endpoint e, const ModularParam& mp, const PrecCtx& ctx) {
  if (k < 1) throw InvalidArgument("sheet index must be >= 1");
  const Complex q = with_precision(mp.q, ctx.bits);
  if (const SeedSeries* s = find_seed(k, e)) {
    Complex sum(ctx.bits);
    for (const auto& [p, c] : s->terms) sum += pow(q, p) * Real(static_cast<long>(c), ctx.bits);
    return pow(q, s->prefactor_power) * sum * static_cast<double>(s->sign);
  }
  // spiral eps ~ e^{2 pi b sigma} unrolled over sheets
  const Real st = mp.sin_theta();
  const Real sigma = e == Endpoint::zero ? Real(ctx.bits) : st;
  const Real eff = (k % 2 == 1) ? st * static_cast<double>(k - 1) + sigma : st * static_cast<double>(k) - sigma;
  return s_of_sigma(eff, mp);
}

std::vector<OrbitSample> Orbit::grid() const {
  std::vector<OrbitSample> g;
  for (const auto& s : samples)
    if (s.on_grid) g.push_back(s);
  return g;
}

namespace {

// Quadratic (or lower) Lagrange interpolation through up to three points.
Complex lagrange(const std::vector<std::pair<Real, Complex>>& pts, const Real& x) {
  Complex r(x.precision());
  for (size_t i = 0; i < pts.size(); ++i) {
    Real w(1L, x.precision());
    for (size_t j = 0; j < pts.size(); ++j)
      if (j != i) w *= (x - pts[j].first) / (pts[i].first - pts[j].first);
    r += pts[i].second * w;
  }
  return r;
}

}  // namespace

Orbit trace_orbit(int k, int npoints, const ModularParam& mp, const PrecCtx& ctx, bool from_end) {
  if (npoints < 16) throw InvalidArgument("trace_orbit: npoints must be >= 16");
  if (k < 1) throw InvalidArgument("trace_orbit: sheet must be >= 1");
  const Real st = with_precision(mp.sin_theta(), ctx.bits);
  const Real sigma0 = from_end ? st : Real(ctx.bits);
  const double dir = from_end ? -1.0 : 1.0;
  const Real dgrid = st / static_cast<double>(npoints - 1);

  Orbit orb;
  orb.sheet = k;
  orb.step = dgrid;

  // grid index j has sigma = j * dgrid; traversal visits j in order of distance from sigma0
  auto grid_sigma = [&](int j) { return j == npoints - 1 ? st : dgrid * static_cast<double>(j); };

  SolveResult r0 = solve_eps(sigma0, sheet_seed(k, from_end ? Endpoint::sin_theta : Endpoint::zero, mp, ctx), mp, ctx);
  orb.newton_total += r0.iterations;
  std::vector<std::pair<Real, Complex>> acc;  // accepted (sigma, eps) in traversal order
  acc.emplace_back(sigma0, r0.eps);
  std::vector<bool> on_grid{true};

  const Real tiny = ctx.tol * 1e3;

  // First step: confirm the quadratic regime eps(h) - eps0 ~ 4 (eps(h/2) - eps0)
  // to make sure the solve stayed on this sheet.
  Real h(1e-12, ctx.bits);
  for (int tries = 0;; ++tries) {
    if (tries > 40) throw NumericalError("trace_orbit: cannot start continuation on sheet " + std::to_string(k));
    const Real s1 = sigma0 + h * dir;
    const Real s2 = sigma0 + h * (dir * 0.5);
    try {
      SolveResult a = solve_eps(s1, r0.eps, mp, ctx, 12);
      SolveResult b = solve_eps(s2, r0.eps, mp, ctx, 12);
      orb.newton_total += a.iterations + b.iterations;
      const Complex da = a.eps - r0.eps, db = b.eps - r0.eps;
      if (abs(da - db * 4.0) <= abs(da) * 0.1 + tiny) {
        acc.emplace_back(s2, b.eps);
        on_grid.push_back(false);
        acc.emplace_back(s1, a.eps);
        on_grid.push_back(false);
        break;
      }
    } catch (const NumericalError&) {
    }
    h *= 0.25;
  }

  int next_grid = 1;  // next grid index (counted from sigma0) to land on
  auto grid_at = [&](int i) { return from_end ? grid_sigma(npoints - 1 - i) : grid_sigma(i); };
  const Real hmin(1e-30, ctx.bits);
  h *= 2.0;
  while (next_grid < npoints) {
    const Real& last = acc.back().first;
    const Real gnext = grid_at(next_grid);
    Real target = last + h * dir;
    bool lands = false;
    if ((dir > 0 && !(target < gnext)) || (dir < 0 && !(target > gnext))) {
      target = gnext;
      lands = true;
    }
    // predictor: three nearest among accepted points and their mirrors about sigma0
    std::vector<std::pair<Real, Complex>> pool(acc.end() - std::min<size_t>(3, acc.size()), acc.end());
    if (acc.size() < 6)
      for (size_t i = 1; i < acc.size(); ++i) pool.emplace_back(sigma0 * 2.0 - acc[i].first, acc[i].second);
    std::sort(pool.begin(), pool.end(), [&](const auto& x, const auto& y) {
      return abs(x.first - target) < abs(y.first - target);
    });
    pool.resize(std::min<size_t>(3, pool.size()));
    const Complex pred = lagrange(pool, target);
    bool ok = false;
    Complex got;
    int iters = 0;
    try {
      SolveResult sr = solve_eps(target, pred, mp, ctx, 12);
      orb.newton_total += sr.iterations;
      iters = sr.iterations;
      got = std::move(sr.eps);
      ok = iters <= 5 && abs(got - pred) <= abs(got - acc.back().second) * 0.1 + tiny;
    } catch (const NumericalError&) {
      ok = false;
    }
    if (!ok) {
      h *= 0.5;
      if (h < hmin)
        throw NumericalError("trace_orbit: continuation failed on sheet " + std::to_string(k) +
                             " at sigma = " + target.to_string(15));
      continue;
    }
    const Real moved = abs(target - last);
    acc.emplace_back(target, std::move(got));
    on_grid.push_back(lands);
    if (lands) ++next_grid;
    if (iters <= 3) h = max(h, moved) * 2.0;
    if (h > dgrid) h = dgrid;
  }

  orb.samples.reserve(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) orb.samples.push_back({acc[i].first, acc[i].second, on_grid[i]});
  if (from_end) std::reverse(orb.samples.begin(), orb.samples.end());
  return orb;
}

Complex G_at_sigma(const Real& sigma, const Complex& eps, const ModularParam& mp, const PrecCtx& ctx) {
  ChiSeries cs(eps, mp, ctx);
  return G_eval(cs, s_of_sigma(with_precision(sigma, ctx.bits), mp)).value;
}

namespace {

struct GSample {
  Real sigma;
  Complex eps;
  Real g;  // Re or Im of G/|G|
};

Real condition_value(const Complex& G, int parity) {
  const Real m = abs(G);
  return parity > 0 ? G.re / m : G.im / m;
}

}  // namespace

QuantizeResult quantize(const Orbit& orbit, int parity, const ModularParam& mp, const PrecCtx& ctx) {
  if (parity != 1 && parity != -1) throw InvalidArgument("parity must be +1 or -1");
  if (orbit.samples.size() < 2) throw InvalidArgument("quantize: empty orbit");
  QuantizeResult out;
  const Real st = with_precision(mp.sin_theta(), ctx.bits);
  const int k = orbit.sheet;
  if (k % 2 == 0)
    out.excluded.push_back("sigma = 0: chi(1, eps) = 0, double zeros of W not all cancelled (open case)");
  else
    out.excluded.push_back("sigma = 0: double zeros of W against simple zeros of the numerator");
  out.excluded.push_back("sigma = sin(theta): double zeros of W against simple zeros of the numerator");

  std::vector<GSample> gs;
  for (const auto& smp : orbit.samples) {
    if (smp.sigma.is_zero() || !(smp.sigma < st)) continue;  // endpoints excluded
    Complex G = G_at_sigma(smp.sigma, smp.eps, mp, ctx);
    gs.push_back({smp.sigma, smp.eps, condition_value(G, parity)});
  }

  auto eval = [&](const Real& sigma, const Complex& seed, const Complex& span) -> GSample {
    SolveResult r = solve_eps(sigma, seed, mp, ctx);
    if (abs(r.eps - seed) > abs(span) + ctx.tol * 1e6)
      throw NumericalError("quantize: eps jumped off the orbit near sigma = " + sigma.to_string(12));
    Complex G = G_at_sigma(sigma, r.eps, mp, ctx);
    return {sigma, r.eps, condition_value(G, parity)};
  };

  for (size_t i = 0; i + 1 < gs.size(); ++i) {
    GSample a = gs[i], b = gs[i + 1];
    if (a.g.sign() == 0) {
      // exact hit on a sample
    } else if (a.g.sign() == b.g.sign()) {
      continue;
    }
    // Illinois regula falsi on sigma -> g(sigma, eps(sigma))
    int side = 0;
    GSample c = a;
    for (int it = 0; it < 400; ++it) {
      if (c.g.is_zero() || !(abs(b.sigma - a.sigma) > ctx.tol)) break;
      Real x = (a.sigma * b.g - b.sigma * a.g) / (b.g - a.g);
      const Real w = b.sigma - a.sigma;
      // keep the trial strictly inside
      if (!(x > min(a.sigma, b.sigma)) || !(x < max(a.sigma, b.sigma))) x = (a.sigma + b.sigma) / 2.0;
      const Real t = (x - a.sigma) / w;
      const Complex seed = a.eps + (b.eps - a.eps) * t;
      c = eval(x, seed, b.eps - a.eps);
      if (c.g.sign() == b.g.sign()) {
        b = c;
        if (side == -1) a.g /= 2.0;
        side = -1;
      } else {
        a = c;
        if (side == 1) b.g /= 2.0;
        side = 1;
      }
    }
    SolveResult fin = solve_eps(c.sigma, c.eps, mp, ctx);
    SpectralPoint p;
    p.sheet = k;
    p.sigma = c.sigma;
    p.eps = fin.eps;
    p.parity = parity;
    p.condition_residual = abs(condition_value(G_at_sigma(c.sigma, fin.eps, mp, ctx), parity));
    p.wronskian_residual = fin.residuals.back();
    out.states.push_back(std::move(p));
  }
  return out;
}

WronskianFactorization rho_extract(const Real& sigma_in, const Complex& eps, const ModularParam& mp,
                                   const PrecCtx& ctx) {
  const Real sigma = with_precision(sigma_in, ctx.bits);
  WronskianFactorization f;
  f.sigma = sigma;
  f.s = s_of_sigma(sigma, mp);
  f.eps = with_precision(eps, ctx.bits);
  ChiSeries cs(f.eps, mp, ctx);
  const Real twopi = ctx.pi() * 2.0;
  const std::array<double, 3> xs{0.1, 0.23, 0.37};
  std::vector<Complex> rhos;
  for (double x0d : xs) {
    const Real x0(x0d, ctx.bits);
    const Complex u0 = exp(mp.b * (twopi * x0));
    const Complex t1 = theta1(mp.b * (twopi * (sigma + x0)), mp.log_q, ctx);
    const Complex t2 = theta1(mp.b * (twopi * (x0 - sigma)), mp.log_q, ctx);
    const Complex den = t1 * t2;
    if (lmag(den) < ctx.tol_log2() + 10)
      throw PoleError("rho_extract: test point too close to a theta zero");
    rhos.push_back(cs.wronskian(u0).value / den);
  }
  f.rho = rhos[0];
  Real spread(ctx.bits);
  for (const auto& r : rhos) spread = max(spread, abs(r - f.rho) / abs(f.rho));
  f.spread = spread;
  return f;
}

}  // namespace mirspec
