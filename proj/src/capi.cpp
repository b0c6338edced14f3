#include "mirspec/mirspec.h"

#include <cmath>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirspec/eigenfunction.hpp"
#include "mirspec/error.hpp"
#include "mirspec/selfdual.hpp"
#include "mirspec/verify.hpp"

#ifndef MIRSPEC_VERSION
#define MIRSPEC_VERSION "0.0.0"
#endif

using namespace mirspec;

struct mirspec_context {
  PrecCtx ctx;
  ModularParam mp;
};

struct mirspec_orbit {
  Orbit orbit;
  std::vector<OrbitSample> grid;
};

struct StateRow {
  SpectralPoint point;
  bool verified = false;
  Real r1, r2, pole;
};

struct mirspec_states {
  std::vector<StateRow> rows;
  std::vector<std::string> excluded;
};

struct mirspec_selfdual {
  SelfDualSpectrum spec;
  Real log_eps;
};

struct mirspec_report {
  std::vector<CheckResult> results;
};

namespace {

thread_local std::string last_error;

mirspec_status to_c(Status s) { return static_cast<mirspec_status>(static_cast<int>(s)); }

template <class F>
mirspec_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const Error& e) {
    last_error = e.what();
    return to_c(e.status());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MIRSPEC_E_INTERNAL;
  } catch (const std::invalid_argument& e) {  // unparsable decimal strings
    last_error = e.what();
    return MIRSPEC_E_INVALID;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MIRSPEC_E_INTERNAL;
  }
}

mirspec_status fail(mirspec_status s, const char* msg) {
  last_error = msg;
  return s;
}

mirspec_status write_str(const std::string& s, char* buf, size_t len) {
  if (!buf || len == 0) return fail(MIRSPEC_E_INVALID, "null or empty output buffer");
  if (s.size() + 1 > len) return fail(MIRSPEC_E_INVALID, "output buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return MIRSPEC_OK;
}

const Real* orbit_field(const OrbitSample& s, mirspec_field f) {
  switch (f) {
    case MIRSPEC_SIGMA: return &s.sigma;
    case MIRSPEC_EPS_RE: return &s.eps.re;
    case MIRSPEC_EPS_IM: return &s.eps.im;
    default: return nullptr;
  }
}

const Real* state_field(const StateRow& r, mirspec_field f) {
  switch (f) {
    case MIRSPEC_SIGMA: return &r.point.sigma;
    case MIRSPEC_EPS_RE: return &r.point.eps.re;
    case MIRSPEC_EPS_IM: return &r.point.eps.im;
    case MIRSPEC_COND_RESIDUAL: return &r.point.condition_residual;
    case MIRSPEC_W_RESIDUAL: return &r.point.wronskian_residual;
    case MIRSPEC_PSI_R1: return r.verified ? &r.r1 : nullptr;
    case MIRSPEC_PSI_R2: return r.verified ? &r.r2 : nullptr;
    case MIRSPEC_POLE: return r.verified ? &r.pole : nullptr;
  }
  return nullptr;
}

const Real* sd_field(const mirspec_selfdual& sd, mirspec_sd_field f) {
  switch (f) {
    case MIRSPEC_SD_EPS: return &sd.spec.eps;
    case MIRSPEC_SD_LOG_EPS: return &sd.log_eps;
    case MIRSPEC_SD_ALPHA: return &sd.spec.alpha;
    case MIRSPEC_SD_BETA: return &sd.spec.beta;
    case MIRSPEC_SD_LAMBDA: return &sd.spec.lambda;
    case MIRSPEC_SD_A: return &sd.spec.A;
    case MIRSPEC_SD_ATILDE: return &sd.spec.At;
    case MIRSPEC_SD_B: return &sd.spec.B;
    case MIRSPEC_SD_BTILDE: return &sd.spec.Bt;
    case MIRSPEC_SD_RESIDUAL: return &sd.spec.residual;
  }
  return nullptr;
}

mirspec_status render(const Real* v, int digits, char* buf, size_t len) {
  if (!v) return fail(MIRSPEC_E_INVALID, "field not available");
  if (digits < 1 || digits > 2000) return fail(MIRSPEC_E_INVALID, "digits must be in [1, 2000]");
  return write_str(v->to_string(digits), buf, len);
}

}  // namespace

extern "C" {

const char* mirspec_version(void) { return MIRSPEC_VERSION; }

const char* mirspec_status_name(mirspec_status s) { return status_name(static_cast<Status>(s)); }

const char* mirspec_last_error(void) { return last_error.c_str(); }

mirspec_status mirspec_context_create(long bits, const char* tol, const char* theta, mirspec_context** out) {
  if (!out || !tol) return fail(MIRSPEC_E_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    PrecCtx ctx = PrecCtx::make(bits, std::string_view(tol));
    ModularParam mp = theta ? ModularParam::make(ctx.real(theta), ctx) : ModularParam::pi_over_4(ctx);
    *out = new mirspec_context{std::move(ctx), std::move(mp)};
    return MIRSPEC_OK;
  });
}

void mirspec_context_destroy(mirspec_context* ctx) { delete ctx; }

long mirspec_context_bits(const mirspec_context* ctx) { return ctx ? static_cast<long>(ctx->ctx.bits) : 0; }

int mirspec_context_flagged(const mirspec_context* ctx) { return ctx && ctx->mp.flagged ? 1 : 0; }

mirspec_status mirspec_context_describe(const mirspec_context* ctx, int digits, char* theta, char* sin_theta,
                                        char* tol, size_t len) {
  if (!ctx) return fail(MIRSPEC_E_INVALID, "null context");
  return guarded([&] {
    mirspec_status s = MIRSPEC_OK;
    if (theta && (s = render(&ctx->mp.theta, digits, theta, len)) != MIRSPEC_OK) return s;
    const Real st = ctx->mp.sin_theta();
    if (sin_theta && (s = render(&st, digits, sin_theta, len)) != MIRSPEC_OK) return s;
    if (tol && (s = render(&ctx->ctx.tol, 3, tol, len)) != MIRSPEC_OK) return s;
    return s;
  });
}

// ---- orbits

mirspec_status mirspec_orbit_trace(const mirspec_context* ctx, int sheet, int npoints, int from_end,
                                   mirspec_orbit** out) {
  if (!ctx || !out) return fail(MIRSPEC_E_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    Orbit o = trace_orbit(sheet, npoints, ctx->mp, ctx->ctx, from_end != 0);
    std::vector<OrbitSample> g = o.grid();
    *out = new mirspec_orbit{std::move(o), std::move(g)};
    return MIRSPEC_OK;
  });
}

void mirspec_orbit_destroy(mirspec_orbit* orbit) { delete orbit; }

int mirspec_orbit_sheet(const mirspec_orbit* orbit) { return orbit ? orbit->orbit.sheet : 0; }

size_t mirspec_orbit_size(const mirspec_orbit* orbit) { return orbit ? orbit->grid.size() : 0; }

mirspec_status mirspec_orbit_get(const mirspec_orbit* orbit, size_t i, mirspec_field f, int digits, char* buf,
                                 size_t len) {
  if (!orbit || i >= orbit->grid.size()) return fail(MIRSPEC_E_INVALID, "orbit index out of range");
  return guarded([&] { return render(orbit_field(orbit->grid[i], f), digits, buf, len); });
}

double mirspec_orbit_get_double(const mirspec_orbit* orbit, size_t i, mirspec_field f) {
  if (!orbit || i >= orbit->grid.size()) return std::nan("");
  const Real* v = orbit_field(orbit->grid[i], f);
  return v ? v->to_double() : std::nan("");
}

// ---- states

mirspec_status mirspec_states_quantize(const mirspec_context* ctx, const mirspec_orbit* orbit, int parity,
                                       mirspec_states** out) {
  if (!ctx || !orbit || !out) return fail(MIRSPEC_E_INVALID, "null argument");
  *out = nullptr;
  if (parity != 1 && parity != -1) return fail(MIRSPEC_E_INVALID, "parity must be +1 or -1");
  return guarded([&] {
    QuantizeResult q = quantize(orbit->orbit, parity, ctx->mp, ctx->ctx);
    auto* s = new mirspec_states;
    for (SpectralPoint& p : q.states) s->rows.push_back(StateRow{std::move(p), false, {}, {}, {}});
    s->excluded = std::move(q.excluded);
    *out = s;
    return MIRSPEC_OK;
  });
}

void mirspec_states_destroy(mirspec_states* states) { delete states; }

size_t mirspec_states_size(const mirspec_states* states) { return states ? states->rows.size() : 0; }

int mirspec_states_sheet(const mirspec_states* states, size_t i) {
  return states && i < states->rows.size() ? states->rows[i].point.sheet : 0;
}

int mirspec_states_parity(const mirspec_states* states, size_t i) {
  return states && i < states->rows.size() ? states->rows[i].point.parity : 0;
}

mirspec_status mirspec_states_get(const mirspec_states* states, size_t i, mirspec_field f, int digits,
                                  char* buf, size_t len) {
  if (!states || i >= states->rows.size()) return fail(MIRSPEC_E_INVALID, "state index out of range");
  return guarded([&] { return render(state_field(states->rows[i], f), digits, buf, len); });
}

double mirspec_states_get_double(const mirspec_states* states, size_t i, mirspec_field f) {
  if (!states || i >= states->rows.size()) return std::nan("");
  const Real* v = state_field(states->rows[i], f);
  return v ? v->to_double() : std::nan("");
}

size_t mirspec_states_excluded_size(const mirspec_states* states) {
  return states ? states->excluded.size() : 0;
}

const char* mirspec_states_excluded(const mirspec_states* states, size_t i) {
  return states && i < states->excluded.size() ? states->excluded[i].c_str() : "";
}

mirspec_status mirspec_states_verify(const mirspec_context* ctx, mirspec_states* states, double eps_shift) {
  if (!ctx || !states) return fail(MIRSPEC_E_INVALID, "null argument");
  return guarded([&] {
    const PrecCtx& c = ctx->ctx;
    const Real bound = c.tol * 1e3;
    std::string worst;
    for (StateRow& row : states->rows) {
      SpectralPoint p = row.point;
      if (eps_shift != 0.0) p.eps = p.eps + Complex(eps_shift, 0.0, c.bits);
      const EigenfunctionParams ep = EigenfunctionParams::make(p, ctx->mp, c);
      const PsiResidual r = psi_residual(Real(0.3, c.bits), ep, c);
      row.r1 = r.r1;
      row.r2 = r.r2;
      row.pole = pole_cancellation_check(ep, c).max_normalized;
      row.verified = true;
      if (!(row.r1 <= bound && row.r2 <= bound && row.pole <= bound) && worst.empty())
        worst = "state at sigma = " + row.point.sigma.to_string(12) + ": residual " +
                max(row.pole, max(row.r1, row.r2)).to_string(3) + " above " + bound.to_string(3);
    }
    if (!worst.empty()) {
      last_error = worst;
      return MIRSPEC_E_CHECK;
    }
    return MIRSPEC_OK;
  });
}

mirspec_status mirspec_states_psi(const mirspec_context* ctx, const mirspec_states* states, size_t i, double x,
                                  double* re, double* im) {
  if (!ctx || !states || !re || !im) return fail(MIRSPEC_E_INVALID, "null argument");
  if (i >= states->rows.size()) return fail(MIRSPEC_E_INVALID, "state index out of range");
  return guarded([&] {
    const EigenfunctionParams ep = EigenfunctionParams::make(states->rows[i].point, ctx->mp, ctx->ctx);
    const Complex v = psi_eval(Complex(x, 0.0, ctx->ctx.bits), ep, ctx->ctx);
    *re = v.re.to_double();
    *im = v.im.to_double();
    return MIRSPEC_OK;
  });
}

// ---- self-dual

mirspec_status mirspec_selfdual_quantize(const mirspec_context* ctx, int n, mirspec_selfdual** out) {
  if (!ctx || !out) return fail(MIRSPEC_E_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    SelfDualSpectrum s = quantize_selfdual(n, ctx->ctx);
    Real le = log(s.eps);
    *out = new mirspec_selfdual{std::move(s), std::move(le)};
    return MIRSPEC_OK;
  });
}

void mirspec_selfdual_destroy(mirspec_selfdual* sd) { delete sd; }

int mirspec_selfdual_level(const mirspec_selfdual* sd) { return sd ? sd->spec.n : -1; }

mirspec_status mirspec_selfdual_get(const mirspec_selfdual* sd, mirspec_sd_field f, int digits, char* buf,
                                    size_t len) {
  if (!sd) return fail(MIRSPEC_E_INVALID, "null argument");
  return guarded([&] { return render(sd_field(*sd, f), digits, buf, len); });
}

double mirspec_selfdual_get_double(const mirspec_selfdual* sd, mirspec_sd_field f) {
  if (!sd) return std::nan("");
  const Real* v = sd_field(*sd, f);
  return v ? v->to_double() : std::nan("");
}

mirspec_status mirspec_selfdual_phi(const mirspec_context* ctx, const mirspec_selfdual* sd, double t, double* re,
                                    double* im) {
  if (!ctx || !sd || !re || !im) return fail(MIRSPEC_E_INVALID, "null argument");
  return guarded([&] {
    const Complex v = phi_eval(Complex(0.0, t, ctx->ctx.bits), sd->spec, ctx->ctx);
    *re = v.re.to_double();
    *im = v.im.to_double();
    return MIRSPEC_OK;
  });
}

// ---- verify

mirspec_status mirspec_verify_run(const mirspec_verify_options* opt, mirspec_report** out) {
  if (!opt || !out) return fail(MIRSPEC_E_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    VerifyOptions o;
    if (opt->bits) o.bits = opt->bits;
    if (opt->tol) o.tol = opt->tol;
    if (opt->theta) o.theta = opt->theta;
    o.quick = opt->quick != 0;
    o.fault = opt->fault != 0;
    if (opt->seed) o.seed = opt->seed;
    Progress cb;
    if (opt->progress)
      cb = [opt](const CheckResult& r) {
        opt->progress(r.name.c_str(), r.passed ? 1 : 0, r.measure, r.bound, r.detail.c_str(), opt->user);
      };
    auto* rep = new mirspec_report{run_verify(o, cb)};
    *out = rep;
    return MIRSPEC_OK;
  });
}

void mirspec_report_destroy(mirspec_report* r) { delete r; }

size_t mirspec_report_size(const mirspec_report* r) { return r ? r->results.size() : 0; }

const char* mirspec_report_name(const mirspec_report* r, size_t i) {
  return r && i < r->results.size() ? r->results[i].name.c_str() : "";
}

int mirspec_report_passed(const mirspec_report* r, size_t i) {
  return r && i < r->results.size() && r->results[i].passed ? 1 : 0;
}

double mirspec_report_measure(const mirspec_report* r, size_t i) {
  return r && i < r->results.size() ? r->results[i].measure : std::nan("");
}

double mirspec_report_bound(const mirspec_report* r, size_t i) {
  return r && i < r->results.size() ? r->results[i].bound : std::nan("");
}

const char* mirspec_report_detail(const mirspec_report* r, size_t i) {
  return r && i < r->results.size() ? r->results[i].detail.c_str() : "";
}

int mirspec_report_all_passed(const mirspec_report* r) {
  if (!r || r->results.empty()) return 0;
  for (const CheckResult& c : r->results)
    if (!c.passed) return 0;
  return 1;
}

}  // extern "C"
