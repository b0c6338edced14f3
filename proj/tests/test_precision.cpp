#include <cmath>

#include "mirspec/error.hpp"
#include "support.hpp"

using namespace mirspec;
using namespace test;

TEST_SUITE("precision") {

TEST_CASE("context validation") {
  const PrecCtx c = PrecCtx::make(192, "1e-40");
  CHECK(c.bits == 192);
  CHECK(c.max_terms >= 16);
  CHECK_NOTHROW(PrecCtx::make(64, "1e-10"));
  CHECK_THROWS_AS(PrecCtx::make(64, "1e-30"), InvalidArgument);
  CHECK_THROWS_AS(PrecCtx::make(32, "1e-5"), InvalidArgument);
  CHECK_THROWS_AS(PrecCtx::make(192, "0"), InvalidArgument);
  CHECK_THROWS_AS(PrecCtx::make(192, "-1e-20"), InvalidArgument);
  CHECK_THROWS_AS(PrecCtx::make(192, "abc"), InvalidArgument);
  CHECK_THROWS_AS(PrecCtx::make(192, "1e-40", 8), InvalidArgument);
  // boundary: tol = 2^{-bits+16} is the weakest admissible precision
  CHECK_NOTHROW(PrecCtx::make(100, Real::pow2(-84, 100)));
  CHECK_THROWS_AS(PrecCtx::make(100, Real::pow2(-85, 100)), InvalidArgument);
}

TEST_CASE("coupling parameters") {
  const auto& c = ctx192();
  const auto& j = ref()["strong"]["pi_over_4"];
  const ModularParam& mp = mp192();
  CHECK(dist(mp.q, C(j["q"])) < 1e-50);
  CHECK(dist(mp.qbar, C(j["qbar"])) < 1e-50);
  // q = e^{-pi} at theta = pi/4
  CHECK(dist(mp.q.re, exp(-c.pi())) < 1e-55);
  CHECK(!mp.flagged);

  const ModularParam m5 = ModularParam::make(c.real("0.5"), c);
  const auto& j5 = ref()["strong"]["theta_0_5"];
  CHECK(dist(m5.q, C(j5["q"])) < 1e-50);
  CHECK(dist(m5.qbar, C(j5["qbar"])) < 1e-50);
  // qbar is the complex conjugate of q for real theta
  CHECK(dist(m5.qbar, conj(m5.q)) < 1e-55);
  CHECK(abs(m5.q) < 1);

  CHECK(ModularParam::make(c.real(0.2), c).flagged);
  CHECK_THROWS_AS(ModularParam::make(c.real(0.0), c), InvalidArgument);
  CHECK_THROWS_AS(ModularParam::make(c.pi() / 2.0, c), InvalidArgument);
  CHECK_THROWS_AS(ModularParam::make(c.real(-0.3), c), InvalidArgument);
}

TEST_CASE("q-Pochhammer") {
  const auto& c = ctx192();
  const Complex q = c.complex(0.3, 0.2), x = c.complex(-0.7, 1.1);
  CHECK(pochhammer_q(x, q, 0, c) == c.complex(1.0));
  const Complex q2 = q * q;
  CHECK(dist(pochhammer_q(q2, q2, 1, c), 1.0 - q2) < 1e-55);

  // infinite product against mpmath and against 40 explicit factors
  const Real e = exp(-c.pi() * 2.0);
  const Complex z(e);
  const Complex inf = pochhammer_q_inf(z, z, c);
  CHECK(dist(inf.re, R(ref()["pochhammer_e2pi_inf"])) < 1e-40);
  CHECK(abs(inf.im) < 1e-55);
  Complex direct = c.complex(1.0), zk = z;
  for (int k = 0; k < 40; ++k) {
    direct = direct * (1.0 - zk);
    zk = zk * z;
  }
  CHECK(dist(inf, direct) < 1e-40);
  CHECK_THROWS_AS(pochhammer_q_inf(z, c.complex(1.0, 0.0), c), Error);
}

TEST_CASE("theta1 against the reference series") {
  const auto& c = ctx192();
  for (const char* name : {"pi_over_4", "theta_0_5"}) {
    const auto& j = ref()["strong"][name];
    const ModularParam mp = ModularParam::make(R(j["theta"]), c);
    for (const auto& s : j["theta1"]) {
      CAPTURE(name);
      CAPTURE(s["w"].dump());
      CHECK(dist(theta1(C(s["w"]), mp.log_q, c), C(s["value"])) < 1e-45);
    }
  }
}

TEST_CASE("theta1 identities") {
  const auto& c = ctx192();
  const ModularParam& mp = mp192();
  const Complex L = mp.log_q;
  CHECK(abs(theta1(Complex(c.bits), L, c)) == 0);  // theta1(1) = 0

  // 1000 random w in the box |Re w|, |Im w| <= 2
  Rng rng(kSeed);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Complex w = rng.box(2.0, c.bits);
    const Complex t = theta1(w, L, c);
    const double scale = std::max(1.0, abs(t).to_double());
    worst = std::max(worst, d(abs(theta1(-w, L, c) + t)) / scale);
    // theta1(q^2 u) = -(1/(q u)) theta1(u)
    worst = std::max(worst, d(abs(theta1(w + L * 2.0, L, c) + exp(-L - w) * t)) / scale);
  }
  CHECK(worst < 10 * tol(c));
}

TEST_CASE("theta1 modular conjugation") {
  const auto& c = ctx192();
  for (double th : {M_PI / 4, 0.5, 1.2}) {
    const ModularParam mp = ModularParam::make(c.real(th), c);
    const Complex b = mp.b, bi = 1.0 / mp.b;
    Rng rng(kSeed + 1);
    for (int i = 0; i < 40; ++i) {
      const Real x(rng.uniform(-1.5, 1.5), c.bits);
      const Complex t = theta1(b * x * (c.pi() * 2.0), mp.log_q, c);
      const Complex rhs = b * exp(times_i(Complex(c.pi() / 4.0 - c.pi() * x * x, Real(c.bits)))) * t;
      // conjugate side from (ubar, qbar); the constant 1/i is conjugated too, hence the sign
      const Complex bar = -theta1(bi * x * (c.pi() * 2.0), mp.log_qbar, c);
      const double scale = std::max(1.0, d(abs(rhs)));
      CAPTURE(th);
      CHECK(d(abs(bar - rhs)) / scale < 10 * tol(c));
      CHECK(d(abs(conj(t) - rhs)) / scale < 10 * tol(c));
    }
  }
}

TEST_CASE("doubling the precision moves theta1 by less than tol") {
  const PrecCtx& c = ctx192();
  const PrecCtx fine = c.refined();
  const ModularParam mp = mp192();
  const ModularParam mpf = ModularParam::pi_over_4(fine);
  Rng rng(kSeed + 2);
  for (int i = 0; i < 20; ++i) {
    const Complex w = rng.box(2.0, c.bits);
    const Complex a = theta1(w, mp.log_q, c);
    const Complex b = theta1(with_precision(w, fine.bits), mpf.log_q, fine);
    CHECK(dist(with_precision(a, fine.bits), b) < tol(c) * std::max(1.0, d(abs(b))));
  }
}

}  // TEST_SUITE
