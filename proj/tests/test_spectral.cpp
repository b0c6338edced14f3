#include <cmath>

#include "mirspec/error.hpp"
#include "mirspec/spectral.hpp"
#include "support.hpp"

using namespace mirspec;
using namespace test;

namespace {

const Orbit& sheet1() {
  static const Orbit o = trace_orbit(1, 64, mp192(), ctx192());
  return o;
}

const SpectralPoint* find_state(const std::vector<SpectralPoint>& v, double sigma) {
  for (const auto& p : v)
    if (std::abs(d(p.sigma) - sigma) < 1e-6) return &p;
  return nullptr;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("Wronskian shift relation and residue") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const Complex q2 = mp.q * mp.q;
  Rng rng(kSeed);
  double worst = 0;
  for (int i = 0; i < 30; ++i) {
    const Complex u = rng.polar(0.3, 2.0, c.bits), eps = rng.box(6.0, c.bits);
    const Complex w = wronskian_eval(u, eps, mp, c).value;
    const Complex ws = wronskian_eval(q2 * u, eps, mp, c).value;
    worst = std::max(worst, rel(ws, w / (q2 * u * u)));
  }
  CHECK(worst < 1e3 * tol(c));

  const auto& j = ref()["residue_real_eps"];
  const Complex res = wronskian_residue_series(c.complex(1.75), mp, c);
  CHECK(dist(res.re, R(j["value"])) < 1e-38);
  // residue >= 1 - q^2 for real eps and 0 < q < 1
  for (double e : {-7.0, -1.0, 0.0, 1.75, 3.0, 12.0}) {
    const Complex r = wronskian_residue_series(c.complex(e), mp, c);
    CHECK(abs(r.im) < 1e-50);
    CHECK(r.re >= 1.0 - (mp.q * mp.q).re);
  }
  // the printed residue series against the contour average of u W(u)
  for (const Complex& e : {c.complex(1.75), c.complex(-2.0, 1.5), c.complex(4.0, -3.0)}) {
    const Complex a = wronskian_residue_series(e, mp, c);
    const Complex b = wronskian_residue_contour(e, mp, c, 96);
    CHECK(rel(a, b) < 1e3 * tol(c));
  }
  CHECK_THROWS_AS(wronskian_eval(c.complex(0.0), c.complex(1.0), mp, c), InvalidArgument);
}

TEST_CASE("endpoint roots") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const auto& j = ref()["endpoints"];
  const Real zero(c.bits), st = mp.sin_theta();
  const Complex e10 = solve_eps(zero, sheet_seed(1, Endpoint::zero, mp, c), mp, c).eps;
  const Complex e1s = solve_eps(st, sheet_seed(1, Endpoint::sin_theta, mp, c), mp, c).eps;
  const Complex e20 = solve_eps(zero, sheet_seed(2, Endpoint::zero, mp, c), mp, c).eps;
  const Complex e2s = solve_eps(st, sheet_seed(2, Endpoint::sin_theta, mp, c), mp, c).eps;
  const Complex e30 = solve_eps(zero, c.complex(535.4972683), mp, c).eps;

  // independent roots of the factorized endpoint equations
  CHECK(dist(e10.re, R(j["eps1_0"])) < 1e-35);
  CHECK(dist(e1s.re, R(j["eps1_sin"])) < 1e-35);
  CHECK(dist(e20.re, R(j["eps2_0"])) < 1e-33);
  CHECK(dist(e2s.re, R(j["eps2_sin"])) < 1e-35);
  CHECK(dist(e30.re, R(j["eps3_0"])) < 1e-33);
  for (const Complex* e : {&e10, &e1s, &e20, &e2s, &e30}) CHECK(abs(e->im) < 1e-35);

  // printed turning points
  CHECK(agrees(e10.re, "1.9962511523", 1e-10));
  CHECK(agrees(e1s.re, "-22.1838257068", 1e-10));
  CHECK(agrees(e20.re, "535.493519473629469", 1e-15));
  CHECK(agrees(e2s.re, "-24.183825694", 1e-9));
  CHECK(agrees(e30.re, "535.49726832", 1e-8));
}

TEST_CASE("endpoint seeds") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const auto& j = ref()["endpoints"];
  CHECK(sheet_seed_is_series(1, Endpoint::zero));
  CHECK(dist(sheet_seed(1, Endpoint::zero, mp, c).re, R(j["eps1_0"])) < 1e-6);
  CHECK(dist(sheet_seed(1, Endpoint::sin_theta, mp, c).re, R(j["eps1_sin"])) < 1e-3);
  CHECK(dist(sheet_seed(2, Endpoint::sin_theta, mp, c).re, R(j["eps2_sin"])) < 1e-3);
  CHECK(dist(sheet_seed(2, Endpoint::zero, mp, c).re, R(j["eps2_0"])) < 1e-3);
  // beyond the printed expansions the spiral estimate is still a finite seed
  CHECK(sheet_seed(5, Endpoint::zero, mp, c).is_finite());
}

TEST_CASE("Newton converges quadratically") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const Real sigma(0.21, c.bits);
  const SolveResult r0 = solve_eps(sigma, sheet1().samples.front().eps, mp, c);
  // restart from a perturbed seed and watch the residual sequence
  const SolveResult r = solve_eps(sigma, r0.eps + c.complex(1e-3, 1e-3), mp, c);
  CHECK(rel(r.eps, r0.eps) < 1e-38);
  int checked = 0;
  for (size_t k = 0; k + 1 < r.residuals.size(); ++k) {
    const double a = d(r.residuals[k]), b = d(r.residuals[k + 1]);
    if (a < 1e-5 && b > 1e-45) {
      CHECK(b <= 1e3 * a * a);
      ++checked;
    }
  }
  CHECK(checked >= 1);
}

TEST_CASE("sheet 1 orbit") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const Orbit& o = sheet1();
  const auto g = o.grid();
  REQUIRE(g.size() >= 16);
  CHECK(g.front().sigma.is_zero());
  CHECK(dist(g.back().sigma, mp.sin_theta()) < 1e-50);
  CHECK(agrees(g.front().eps.re, "1.9962511523", 1e-10));
  CHECK(agrees(g.back().eps.re, "-22.1838257068", 1e-10));
  for (size_t i = 1; i < o.samples.size(); ++i) CHECK(o.samples[i].sigma > o.samples[i - 1].sigma);

  // continuation from the other end lands on the same branch
  const Orbit back = trace_orbit(1, 64, mp, c, true);
  const auto gb = back.grid();
  REQUIRE(gb.size() == g.size());
  double worst = 0;
  for (size_t i = 0; i < g.size(); ++i) {
    CHECK(dist(g[i].sigma, gb[i].sigma) < 1e-45);
    worst = std::max(worst, rel(g[i].eps, gb[i].eps));
  }
  CHECK(worst < 1e-30);

  // eps(sigma) = eps(-sigma) = eps(2 sin theta - sigma)
  for (size_t i : {size_t(5), size_t(20), size_t(40)}) {
    const Real s = g[i].sigma;
    CHECK(rel(solve_eps(-s, g[i].eps, mp, c).eps, g[i].eps) < 1e-35);
    CHECK(rel(solve_eps(mp.sin_theta() * 2.0 - s, g[i].eps, mp, c).eps, g[i].eps) < 1e-35);
  }
}

TEST_CASE("conjugate coupling gives the conjugate eigenvalue") {
  const auto& c = ctx192();
  const ModularParam mp = ModularParam::make(c.real(0.6), c);
  const ModularParam cj = mp.conjugate();
  CHECK(dist(cj.q, mp.qbar) < 1e-55);
  for (double s : {0.1, 0.3, 0.45}) {
    const Real sigma(s, c.bits);
    const Complex e = solve_eps(sigma, sheet_seed(1, Endpoint::zero, mp, c), mp, c).eps;
    const Complex ec = solve_eps(sigma, conj(e), cj, c).eps;
    CHECK(rel(ec, conj(e)) < 1e-35);
  }
}

TEST_CASE("sheet 1 quantization") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const QuantizeResult even = quantize(sheet1(), 1, mp, c);
  const QuantizeResult odd = quantize(sheet1(), -1, mp, c);
  REQUIRE(even.states.size() == 1);
  REQUIRE(odd.states.size() == 1);
  const SpectralPoint& g = even.states[0];
  CHECK(g.parity == 1);
  CHECK(g.sheet == 1);
  CHECK(dist(g.sigma, mp.sin_theta() / 2.0) < 1e-38);
  CHECK(abs(g.eps.re) < 1e-15);
  CHECK(agrees(g.eps.im, "4.59435880983691894", 1e-17));
  const SpectralPoint& o = odd.states[0];
  CHECK(agrees(o.sigma, "0.6121173716461672675", 1e-18));
  CHECK(agrees(o.eps.re, "-13.8783047780366906", 1e-15));
  CHECK(agrees(o.eps.im, "6.161296243244348685", 1e-17));
  // endpoints are excluded with a reason, never silently
  CHECK(!even.excluded.empty());
  for (const auto& p : {g, o}) {
    CHECK(p.condition_residual < 1e3 * tol(c));
    CHECK(p.wronskian_residual < 1e3 * tol(c));
  }
}

TEST_CASE("factorization, periodicity and simplicity at the quantized points") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const Complex q2 = mp.q * mp.q;
  std::vector<SpectralPoint> pts;
  for (int par : {1, -1})
    for (auto& p : quantize(sheet1(), par, mp, c).states) pts.push_back(p);
  REQUIRE(pts.size() == 2);
  for (const auto& p : pts) {
    const WronskianFactorization f = rho_extract(p.sigma, p.eps, mp, c);
    CHECK(f.spread < 1e3 * tol(c));
    CHECK(abs(f.rho) > 1e-10);

    // G(q^{2n} s) = G(s)
    const Complex s = s_of_sigma(p.sigma, mp);
    const Complex g0 = G_eval(s, p.eps, mp, c).value;
    CHECK(rel(G_eval(q2 * s, p.eps, mp, c).value, g0) < 1e3 * tol(c));
    CHECK(rel(G_eval(q2 * q2 * s, p.eps, mp, c).value, g0) < 1e3 * tol(c));

    // s stays away from +-q^Z
    for (int n = -4; n <= 4; ++n) {
      const Complex qn = pow(mp.q, n);
      CHECK(rel(s, qn) > 1e-3);
      CHECK(rel(s, -qn) > 1e-3);
    }

    // conj W(u) / W(u) = i b^2 conj(rho)/rho e^{-2 pi i (sigma^2 + x^2)} for real x
    for (double xv : {0.17, -0.41, 0.66}) {
      const Real x(xv, c.bits);
      const Complex u = exp(mp.b * x * (c.pi() * 2.0));
      const Complex w = wronskian_eval(u, p.eps, mp, c).value;
      const Real ph = -(c.pi() * 2.0) * (p.sigma * p.sigma + x * x);
      const Complex rhs = times_i(mp.b * mp.b) * conj(f.rho) / f.rho * Complex(cos(ph), sin(ph));
      CHECK(rel(conj(w) / w, rhs) < 1e3 * tol(c));
    }
  }
}

TEST_CASE("sheet 2 middle state") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const Orbit o = trace_orbit(2, 64, mp, c);
  const auto even = quantize(o, 1, mp, c);
  const SpectralPoint* m = find_state(even.states, d(mp.sin_theta()) / 2);
  REQUIRE(m != nullptr);
  CHECK(abs(m->eps.re) < 1e-15);
  CHECK(agrees(m->eps.im, "-111.300184113096796", 1e-15));
  // the sigma = 0 double pole of even sheets is reported as excluded
  bool zero_excluded = false;
  for (const auto& e : even.excluded) zero_excluded |= e.find("sigma = 0") != std::string::npos;
  CHECK(zero_excluded);
}

}  // TEST_SUITE
