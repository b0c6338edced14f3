#include <cmath>
#include <string>

#include "doctest.h"
#include "mirspec/mirspec.h"

namespace {

std::string get(const mirspec_states* s, size_t i, mirspec_field f, int digits = 18) {
  char buf[256];
  REQUIRE(mirspec_states_get(s, i, f, digits, buf, sizeof buf) == MIRSPEC_OK);
  return buf;
}

struct Ctx {
  mirspec_context* c = nullptr;
  Ctx(long bits, const char* tol, const char* theta = nullptr) {
    REQUIRE(mirspec_context_create(bits, tol, theta, &c) == MIRSPEC_OK);
  }
  ~Ctx() { mirspec_context_destroy(c); }
};

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version and status names") {
  CHECK(std::string(mirspec_version()).size() > 0);
  CHECK(std::string(mirspec_status_name(MIRSPEC_OK)) != std::string(mirspec_status_name(MIRSPEC_E_POLE)));
}

TEST_CASE("context creation and errors") {
  mirspec_context* c = nullptr;
  CHECK(mirspec_context_create(32, "1e-5", nullptr, &c) == MIRSPEC_E_INVALID);
  CHECK(c == nullptr);
  CHECK(std::string(mirspec_last_error()).size() > 0);
  CHECK(mirspec_context_create(64, "1e-30", nullptr, &c) == MIRSPEC_E_INVALID);
  CHECK(mirspec_context_create(192, "1e-40", "2.0", &c) == MIRSPEC_E_INVALID);
  CHECK(mirspec_context_create(192, "1e-40", "x", &c) == MIRSPEC_E_INVALID);
  CHECK(mirspec_context_create(192, "1e-40", nullptr, nullptr) == MIRSPEC_E_INVALID);

  Ctx ok(192, "1e-40");
  CHECK(mirspec_context_bits(ok.c) == 192);
  CHECK(mirspec_context_flagged(ok.c) == 0);
  char th[64], st[64], tl[64];
  REQUIRE(mirspec_context_describe(ok.c, 12, th, st, tl, sizeof th) == MIRSPEC_OK);
  CHECK(std::string(th) == "0.785398163397");
  CHECK(std::string(st) == "0.707106781187");
  CHECK(mirspec_context_describe(ok.c, 12, th, st, tl, 4) == MIRSPEC_E_INVALID);

  Ctx low(128, "1e-27", "0.3");
  CHECK(mirspec_context_flagged(low.c) == 1);
  mirspec_context_destroy(nullptr);
}

TEST_CASE("sheet 1 through the C interface") {
  Ctx c(192, "1e-40");
  mirspec_orbit* o = nullptr;
  CHECK(mirspec_orbit_trace(c.c, 0, 64, 0, &o) == MIRSPEC_E_INVALID);
  REQUIRE(mirspec_orbit_trace(c.c, 1, 64, 0, &o) == MIRSPEC_OK);
  CHECK(mirspec_orbit_sheet(o) == 1);
  const size_t n = mirspec_orbit_size(o);
  REQUIRE(n >= 64);
  CHECK(mirspec_orbit_get_double(o, 0, MIRSPEC_SIGMA) == 0.0);
  CHECK(std::abs(mirspec_orbit_get_double(o, n - 1, MIRSPEC_SIGMA) - std::sqrt(0.5)) < 1e-15);
  char buf[64];
  REQUIRE(mirspec_orbit_get(o, 0, MIRSPEC_EPS_RE, 11, buf, sizeof buf) == MIRSPEC_OK);
  CHECK(std::string(buf) == "1.9962511523");
  CHECK(mirspec_orbit_get(o, n, MIRSPEC_EPS_RE, 11, buf, sizeof buf) == MIRSPEC_E_INVALID);

  mirspec_states* even = nullptr;
  CHECK(mirspec_states_quantize(c.c, o, 0, &even) == MIRSPEC_E_INVALID);
  REQUIRE(mirspec_states_quantize(c.c, o, 1, &even) == MIRSPEC_OK);
  REQUIRE(mirspec_states_size(even) == 1);
  CHECK(mirspec_states_parity(even, 0) == 1);
  CHECK(mirspec_states_sheet(even, 0) == 1);
  CHECK(get(even, 0, MIRSPEC_EPS_IM) == "4.59435880983691894");
  CHECK(std::abs(mirspec_states_get_double(even, 0, MIRSPEC_EPS_RE)) < 1e-30);
  CHECK(mirspec_states_get_double(even, 0, MIRSPEC_COND_RESIDUAL) < 1e-37);
  // fields filled by verify are rejected before it runs
  CHECK(mirspec_states_get(even, 0, MIRSPEC_POLE, 6, buf, sizeof buf) == MIRSPEC_E_INVALID);
  CHECK(mirspec_states_verify(c.c, even, 0.0) == MIRSPEC_OK);
  CHECK(mirspec_states_get_double(even, 0, MIRSPEC_POLE) < 1e-37);
  CHECK(mirspec_states_get_double(even, 0, MIRSPEC_PSI_R1) < 1e-37);

  double re = 0, im = 0, re2 = 0, im2 = 0;
  REQUIRE(mirspec_states_psi(c.c, even, 0, 0.4, &re, &im) == MIRSPEC_OK);
  REQUIRE(mirspec_states_psi(c.c, even, 0, -0.4, &re2, &im2) == MIRSPEC_OK);
  CHECK(std::abs(re - re2) < 1e-14 * std::abs(re));
  CHECK(std::abs(im) < 1e-14 * std::abs(re));
  CHECK(mirspec_states_psi(c.c, even, 3, 0.4, &re, &im) == MIRSPEC_E_INVALID);

  mirspec_states* odd = nullptr;
  REQUIRE(mirspec_states_quantize(c.c, o, -1, &odd) == MIRSPEC_OK);
  REQUIRE(mirspec_states_size(odd) == 1);
  CHECK(get(odd, 0, MIRSPEC_SIGMA, 19) == "0.6121173716461672675");
  CHECK(get(odd, 0, MIRSPEC_EPS_RE) == "-13.8783047780366906");
  CHECK(get(odd, 0, MIRSPEC_EPS_IM, 19) == "6.161296243244348685");
  // negative control: a detuned eps fails the pole check
  CHECK(mirspec_states_verify(c.c, odd, 1e-5) == MIRSPEC_E_CHECK);
  CHECK(mirspec_states_get_double(odd, 0, MIRSPEC_POLE) > 1e-9);

  mirspec_states_destroy(odd);
  mirspec_states_destroy(even);
  mirspec_orbit_destroy(o);
}

TEST_CASE("self-dual level through the C interface") {
  Ctx c(128, "1e-30");
  mirspec_selfdual* sd = nullptr;
  CHECK(mirspec_selfdual_quantize(c.c, -1, &sd) == MIRSPEC_E_INVALID);
  REQUIRE(mirspec_selfdual_quantize(c.c, 0, &sd) == MIRSPEC_OK);
  CHECK(mirspec_selfdual_level(sd) == 0);
  char buf[64];
  REQUIRE(mirspec_selfdual_get(sd, MIRSPEC_SD_LOG_EPS, 25, buf, sizeof buf) == MIRSPEC_OK);
  CHECK(std::string(buf) == "2.881815429926296782477140");
  CHECK(std::abs(mirspec_selfdual_get_double(sd, MIRSPEC_SD_RESIDUAL)) < 1e-27);
  // phi(i t) is i times a real function
  double re = 1, im = 0;
  REQUIRE(mirspec_selfdual_phi(c.c, sd, 0.3, &re, &im) == MIRSPEC_OK);
  CHECK(std::abs(re) < 1e-20 * std::abs(im));
  CHECK(std::isfinite(im));
  mirspec_selfdual_destroy(sd);
}

TEST_CASE("quick verify report") {
  mirspec_verify_options opt{};
  opt.quick = 1;
  int calls = 0;
  opt.progress = [](const char*, int, double, double, const char*, void* u) { ++*static_cast<int*>(u); };
  opt.user = &calls;
  mirspec_report* r = nullptr;
  REQUIRE(mirspec_verify_run(&opt, &r) == MIRSPEC_OK);
  const size_t n = mirspec_report_size(r);
  CHECK(n >= 9);
  CHECK(calls == static_cast<int>(n));
  CHECK(mirspec_report_all_passed(r) == 1);
  for (size_t i = 0; i < n; ++i) {
    CAPTURE(mirspec_report_name(r, i));
    CHECK(mirspec_report_passed(r, i) == 1);
    CHECK(mirspec_report_measure(r, i) <= mirspec_report_bound(r, i));
  }
  mirspec_report_destroy(r);

  opt.fault = 1;
  opt.progress = nullptr;
  REQUIRE(mirspec_verify_run(&opt, &r) == MIRSPEC_OK);
  CHECK(mirspec_report_all_passed(r) == 0);
  bool eigen_failed = false;
  for (size_t i = 0; i < mirspec_report_size(r); ++i)
    if (!mirspec_report_passed(r, i)) eigen_failed |= std::string(mirspec_report_name(r, i)).find("eigen") != std::string::npos;
  CHECK(eigen_failed);
  mirspec_report_destroy(r);
}

}  // TEST_SUITE
