#include <cmath>

#include "mirspec/chi.hpp"
#include "mirspec/error.hpp"
#include "mirspec/spectral.hpp"
#include "support.hpp"

using namespace mirspec;
using namespace test;

namespace {

Real scale_of(long lscale, const PrecCtx& c) { return max(Real(1L, c.bits), Real::pow2(lscale, c.bits)); }

}  // namespace

TEST_SUITE("chi") {

TEST_CASE("polynomial sequence") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const Complex eps = c.complex(1.3, -0.4);
  const ChiPolySeq s = chi_poly_seq(eps, mp, 12, c);
  REQUIRE(s.values.size() == 13);
  CHECK(s.values[0] == c.complex(1.0));
  CHECK(s.values[1] == eps);
  CHECK(s.dvalues[0] == c.complex(0.0));
  CHECK(s.dvalues[1] == c.complex(1.0));

  const Complex q = mp.q, qi = 1.0 / mp.q;
  const Complex a1 = q - qi, a2 = q * q - qi * qi;
  // chi_2 = eps^2 + (q - 1/q)^2, chi_3 = eps (eps^2 + (q^2 - q^-2)^2 + (q - 1/q)^2)
  CHECK(rel(s.values[2], eps * eps + a1 * a1) < 1e-55);
  CHECK(rel(s.values[3], eps * (eps * eps + a2 * a2 + a1 * a1)) < 1e-55);

  // the recursion holds by construction
  Complex qn = q;
  for (int n = 1; n < 12; ++n) {
    const Complex a = qn - 1.0 / qn;
    const Complex r = s.values[n + 1] - eps * s.values[n] - a * a * s.values[n - 1];
    CHECK(d(abs(r)) <= 1e-50 * d(abs(s.values[n + 1])));
    qn = qn * q;
  }

  // q -> 1/q leaves the coefficients (q^n - q^-n)^2 unchanged
  ModularParam inv = mp;
  inv.q = qi;
  const ChiPolySeq si = chi_poly_seq(eps, inv, 12, c);
  for (int n = 0; n <= 12; ++n) CHECK(rel(si.values[n], s.values[n]) < 1e-50);
}

TEST_CASE("growth law chi_n ~ q^{-n^2/2}") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const ChiPolySeq s = chi_poly_seq(c.complex(2.5, 1.0), mp, 60, c);
  const double lq = -std::log(d(abs(mp.q)));
  double lo = 1e300, hi = -1e300;
  for (int n = 1; n <= 60; ++n) {
    const double g = d(log(abs(s.values[n]))) - 0.5 * n * n * lq;
    lo = std::min(lo, g), hi = std::max(hi, g);
  }
  CHECK(hi - lo < 10.0);
}

TEST_CASE("series against the reference sums") {
  const auto& c = ctx192();
  for (const char* name : {"pi_over_4", "theta_0_5"}) {
    const auto& j = ref()["strong"][name];
    const ModularParam mp = ModularParam::make(R(j["theta"]), c);
    for (const auto& s : j["chi"]) {
      CAPTURE(name);
      CAPTURE(s["u"].dump());
      const Complex u = C(s["u"]), eps = C(s["eps"]);
      const ValueDeriv v = chi_eval(u, eps, mp, c);
      CHECK(abs(v.value - C(s["chi"])) <= scale_of(v.lscale, c) * (10 * tol(c)));
      CHECK(rel(chi_check_eval(u, eps, mp, c), C(s["chi_check"])) < 1e-35);
      CHECK(rel(wronskian_eval(u, eps, mp, c).value, C(s["wronskian"])) < 1e-35);
    }
  }
}

TEST_CASE("chi(0) = 1 and the u = 0 guards") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const Complex eps = c.complex(-3.0, 2.0);
  const ValueDeriv v = chi_eval(c.complex(0.0), eps, mp, c);
  CHECK(v.value == c.complex(1.0));
  CHECK_THROWS_AS(chi_check_eval(c.complex(0.0), eps, mp, c), InvalidArgument);
  // u = 1 is the fixed point of u -> 1/u
  CHECK(rel(chi_check_eval(c.complex(1.0), eps, mp, c), chi_eval(c.complex(1.0), eps, mp, c).value) < 1e-55);
}

TEST_CASE("functional equation for chi and chi-check at 100 random points") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const Complex q2 = mp.q * mp.q;
  Rng rng(kSeed);
  double worst = 0, worst_check = 0;
  for (int i = 0; i < 100; ++i) {
    const Complex u = rng.polar(0.05, 2.0, c.bits);
    const Complex eps = rng.box(6.0, c.bits);
    ChiSeries cs(eps, mp, c);
    const Complex k = 1.0 - eps * u + u * u;
    {
      const ValueDeriv a = cs.eval(u / q2), b = cs.eval(q2 * u), f = cs.eval(u);
      const Complex r = a.value + q2 * u * u * b.value - k * f.value;
      const Real s = max(scale_of(a.lscale, c), max(scale_of(b.lscale, c), scale_of(f.lscale, c) * abs(k)));
      worst = std::max(worst, d(abs(r) / s));
    }
    {
      const ValueDeriv a = cs.eval_check(u / q2), b = cs.eval_check(q2 * u), f = cs.eval_check(u);
      const Complex r = a.value + q2 * u * u * b.value - k * f.value;
      const Real s = max(abs(a.value), max(abs(q2 * u * u * b.value), abs(k * f.value)));
      worst_check = std::max(worst_check, d(abs(r) / s));
    }
  }
  CHECK(worst < 10 * tol(c));
  CHECK(worst_check < 10 * tol(c));
}

TEST_CASE("eps-derivative against central differences") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  Rng rng(kSeed + 3);
  const Real h(1e-10, c.bits);
  for (int i = 0; i < 10; ++i) {
    const Complex u = rng.polar(0.2, 1.5, c.bits), eps = rng.box(4.0, c.bits);
    const ValueDeriv v = chi_eval(u, eps, mp, c);
    const Complex fd =
        (chi_eval(u, eps + h, mp, c).value - chi_eval(u, eps - h, mp, c).value) / (h * 2.0);
    CHECK(rel(v.deps, fd) < 1e-8);
  }
}

TEST_CASE("dual solution") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const Complex q2 = mp.q * mp.q;
  Rng rng(kSeed + 4);
  double crochet = 0, fe = 0;
  for (int i = 0; i < 30; ++i) {
    const Complex u = rng.polar(0.3, 1.5, c.bits), eps = rng.box(5.0, c.bits);
    ChiSeries cs(eps, mp, c);
    const Complex du = chi_dual_eval(cs, u), dq = chi_dual_eval(cs, q2 * u), dm = chi_dual_eval(cs, u / q2);
    // <chi_q, chi_{1/q}>(u) = 1
    const Complex a = cs.eval(u).value * dq, b = q2 * u * u * du * cs.eval(q2 * u).value;
    crochet = std::max(crochet, d(abs(a - b - 1.0) / max(Real(1L, c.bits), abs(a) + abs(b))));
    // f(q^2 u) + (u^2/q^2) f(u/q^2) = (1 - eps u + u^2) f(u)
    const Complex t1 = dq, t2 = u * u / q2 * dm, t3 = (1.0 - eps * u + u * u) * du;
    fe = std::max(fe, d(abs(t1 + t2 - t3) / max(abs(t1), max(abs(t2), abs(t3)))));
  }
  CHECK(crochet < 1e3 * tol(c));
  CHECK(fe < 1e3 * tol(c));

  // chi_{1/q}(q^{2n} z) -> 1
  const Complex z = c.complex(0.8, 0.3), eps = c.complex(1.7, -0.4);
  ChiSeries cs(eps, mp, c);
  Complex zn = z;
  double prev = 1e300;
  for (int n = 0; n < 14; ++n) {
    const double dev = d(abs(chi_dual_eval(cs, zn) - 1.0));
    if (n >= 2) CHECK(dev < prev);
    prev = dev;
    zn = zn * q2;
  }
  CHECK(prev < 1e-20);
}

TEST_CASE("dual solution signals a pole at a Wronskian zero") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const Real sigma = mp.sin_theta() / 2.0;
  const Complex eps = solve_eps(sigma, c.complex(0.0, 4.594), mp, c).eps;
  CHECK_THROWS_AS(chi_dual_eval(s_of_sigma(sigma, mp), eps, mp, c), PoleError);
}

TEST_CASE("G antisymmetry") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  Rng rng(kSeed + 5);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const Complex u = rng.polar(0.3, 3.0, c.bits), eps = rng.box(8.0, c.bits);
    ChiSeries cs(eps, mp, c);
    const Complex g = G_eval(cs, u).value, gi = G_eval(cs, 1.0 / u).value;
    worst = std::max(worst, d(abs(g * gi - 1.0)));
  }
  CHECK(worst < 10 * tol(c));
  // G(1)^2 = 1
  for (double e : {0.7, -2.3, 5.1}) {
    const Complex g = G_eval(c.complex(1.0), c.complex(e, 0.3), mp, c).value;
    CHECK(d(abs(g * g - 1.0)) < 1e-50);
  }
}

TEST_CASE("G is purely imaginary at the even ground state") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const Real sigma = mp.sin_theta() / 2.0;
  const Complex eps = solve_eps(sigma, c.complex(0.0, 4.59435880983691894), mp, c).eps;
  const Complex g = G_at_sigma(sigma, eps, mp, c);
  CHECK(d(abs(g.re) / abs(g)) < 1e3 * tol(c));
  CHECK(d(abs(g.im) / abs(g)) > 0.5);
}

TEST_CASE("multiplication rule") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const Complex eps = c.complex(-0.7, 3.2);
  CHECK(d(chi_mult_check(0, 5, eps, mp, c)) == 0.0);
  // chi_1^2 = chi_2 + (q^2;q^-2)_1^2 (q^-2;q^2)_1 / (q^2;q^2)_1 chi_0, expanded by hand
  {
    const Complex q2 = mp.q * mp.q;
    const Complex k = (1.0 - q2) * (1.0 - q2) * (1.0 - 1.0 / q2) / (1.0 - q2);
    const ChiPolySeq s = chi_poly_seq(eps, mp, 2, c);
    CHECK(rel(s.values[1] * s.values[1], s.values[2] + k) < 1e-50);
    CHECK(d(chi_mult_check(1, 1, eps, mp, c)) < 10 * tol(c));
  }
  Rng rng(kSeed + 6);
  for (int i = 0; i < 4; ++i) {
    const Complex e = rng.box(5.0, c.bits);
    CHECK(d(chi_mult_check(7, 9, e, mp, c)) < 10 * tol(c));
  }
  double worst = 0;
  for (long m = 0; m <= 10; ++m)
    for (long n = 0; n <= 10; ++n) worst = std::max(worst, d(chi_mult_check(m, n, eps, mp, c)));
  CHECK(worst < 10 * tol(c));
}

}  // TEST_SUITE
