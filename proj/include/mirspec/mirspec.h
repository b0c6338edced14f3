/* C interface to the mirror-curve spectral solver.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns a mirspec_status;
 * the message of the most recent failure on the calling thread is available
 * from mirspec_last_error(). Handles are immutable after creation and may be
 * shared between threads.
 */
#ifndef MIRSPEC_H
#define MIRSPEC_H

#include <stddef.h>

#if defined(_WIN32)
#define MIRSPEC_API __declspec(dllexport)
#else
#define MIRSPEC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mirspec_status {
  MIRSPEC_OK = 0,
  MIRSPEC_E_INVALID = 1,   /* bad argument or configuration */
  MIRSPEC_E_NUMERICAL = 2, /* non-convergence, raise precision */
  MIRSPEC_E_POLE = 3,      /* denominator at its zero floor */
  MIRSPEC_E_CHECK = 4,     /* a verification check failed */
  MIRSPEC_E_INTERNAL = 5
} mirspec_status;

typedef struct mirspec_context mirspec_context;
typedef struct mirspec_orbit mirspec_orbit;
typedef struct mirspec_states mirspec_states;
typedef struct mirspec_selfdual mirspec_selfdual;
typedef struct mirspec_report mirspec_report;

MIRSPEC_API const char* mirspec_version(void);
MIRSPEC_API const char* mirspec_status_name(mirspec_status s);
/* Message of the last failed call on this thread ("" if none). */
MIRSPEC_API const char* mirspec_last_error(void);

/* Working precision in bits, tolerance as a decimal string and the coupling
 * angle theta as a decimal string (NULL for pi/4). */
MIRSPEC_API mirspec_status mirspec_context_create(long bits, const char* tol, const char* theta,
                                                  mirspec_context** out);
MIRSPEC_API void mirspec_context_destroy(mirspec_context* ctx);
MIRSPEC_API long mirspec_context_bits(const mirspec_context* ctx);
/* 1 when theta lies below the well-tested range [pi/8, pi/2). */
MIRSPEC_API int mirspec_context_flagged(const mirspec_context* ctx);
/* Decimal renderings of theta, sin(theta) and tol. */
MIRSPEC_API mirspec_status mirspec_context_describe(const mirspec_context* ctx, int digits, char* theta,
                                                    char* sin_theta, char* tol, size_t len);

/* Numeric fields, rendered as decimal strings with round-half-even. */
typedef enum mirspec_field {
  MIRSPEC_SIGMA = 0,
  MIRSPEC_EPS_RE = 1,
  MIRSPEC_EPS_IM = 2,
  MIRSPEC_COND_RESIDUAL = 3, /* states: quantization condition residual */
  MIRSPEC_W_RESIDUAL = 4,    /* states: |W(s, eps)| */
  MIRSPEC_PSI_R1 = 5,        /* states, after verify: shift i b residual */
  MIRSPEC_PSI_R2 = 6,        /* states, after verify: shift i/b residual */
  MIRSPEC_POLE = 7           /* states, after verify: pole cancellation */
} mirspec_field;

/* ---- orbits ---- */
MIRSPEC_API mirspec_status mirspec_orbit_trace(const mirspec_context* ctx, int sheet, int npoints,
                                               int from_end, mirspec_orbit** out);
MIRSPEC_API void mirspec_orbit_destroy(mirspec_orbit* orbit);
MIRSPEC_API int mirspec_orbit_sheet(const mirspec_orbit* orbit);
/* Grid points, increasing sigma, both endpoints included. */
MIRSPEC_API size_t mirspec_orbit_size(const mirspec_orbit* orbit);
MIRSPEC_API mirspec_status mirspec_orbit_get(const mirspec_orbit* orbit, size_t i, mirspec_field f,
                                             int digits, char* buf, size_t len);
MIRSPEC_API double mirspec_orbit_get_double(const mirspec_orbit* orbit, size_t i, mirspec_field f);

/* ---- quantized states ---- */
/* parity +1 (even) or -1 (odd). */
MIRSPEC_API mirspec_status mirspec_states_quantize(const mirspec_context* ctx, const mirspec_orbit* orbit,
                                                   int parity, mirspec_states** out);
MIRSPEC_API void mirspec_states_destroy(mirspec_states* states);
MIRSPEC_API size_t mirspec_states_size(const mirspec_states* states);
MIRSPEC_API int mirspec_states_sheet(const mirspec_states* states, size_t i);
MIRSPEC_API int mirspec_states_parity(const mirspec_states* states, size_t i);
MIRSPEC_API mirspec_status mirspec_states_get(const mirspec_states* states, size_t i, mirspec_field f,
                                              int digits, char* buf, size_t len);
MIRSPEC_API double mirspec_states_get_double(const mirspec_states* states, size_t i, mirspec_field f);
/* Endpoint cases left out of the spectrum, with reasons. */
MIRSPEC_API size_t mirspec_states_excluded_size(const mirspec_states* states);
MIRSPEC_API const char* mirspec_states_excluded(const mirspec_states* states, size_t i);
/* Difference-equation residuals at x = 0.3 and pole cancellation for every
 * state; fills the PSI_R1, PSI_R2 and POLE fields. A nonzero eps_shift detunes
 * eps before the checks (negative control). Returns MIRSPEC_E_CHECK when any
 * value exceeds 1e3 tol. */
MIRSPEC_API mirspec_status mirspec_states_verify(const mirspec_context* ctx, mirspec_states* states,
                                                 double eps_shift);
/* psi(x) for real x at state i. */
MIRSPEC_API mirspec_status mirspec_states_psi(const mirspec_context* ctx, const mirspec_states* states,
                                              size_t i, double x, double* re, double* im);

/* ---- self-dual levels ---- */
typedef enum mirspec_sd_field {
  MIRSPEC_SD_EPS = 0,
  MIRSPEC_SD_LOG_EPS = 1,
  MIRSPEC_SD_ALPHA = 2,
  MIRSPEC_SD_BETA = 3,
  MIRSPEC_SD_LAMBDA = 4,
  MIRSPEC_SD_A = 5,
  MIRSPEC_SD_ATILDE = 6,
  MIRSPEC_SD_B = 7,
  MIRSPEC_SD_BTILDE = 8,
  MIRSPEC_SD_RESIDUAL = 9
} mirspec_sd_field;

MIRSPEC_API mirspec_status mirspec_selfdual_quantize(const mirspec_context* ctx, int n, mirspec_selfdual** out);
MIRSPEC_API void mirspec_selfdual_destroy(mirspec_selfdual* sd);
MIRSPEC_API int mirspec_selfdual_level(const mirspec_selfdual* sd);
MIRSPEC_API mirspec_status mirspec_selfdual_get(const mirspec_selfdual* sd, mirspec_sd_field f, int digits,
                                                char* buf, size_t len);
MIRSPEC_API double mirspec_selfdual_get_double(const mirspec_selfdual* sd, mirspec_sd_field f);
/* phi(i t); the value is i times a real function of t. */
MIRSPEC_API mirspec_status mirspec_selfdual_phi(const mirspec_context* ctx, const mirspec_selfdual* sd,
                                                double t, double* re, double* im);

/* ---- invariant suites ---- */
typedef struct mirspec_verify_options {
  long bits;            /* 0: 192 */
  const char* tol;      /* NULL: "1e-40" */
  const char* theta;    /* NULL: pi/4 */
  int quick;            /* 64 bits, tol 1e-10, smaller samples */
  int fault;            /* detune eps before the pole cancellation check */
  unsigned long long seed;  /* 0: default */
  /* Optional, called after each suite. */
  void (*progress)(const char* name, int passed, double measure, double bound, const char* detail,
                   void* user);
  void* user;
} mirspec_verify_options;

/* Runs all suites. Returns MIRSPEC_OK with a report even when checks fail;
 * use mirspec_report_all_passed. */
MIRSPEC_API mirspec_status mirspec_verify_run(const mirspec_verify_options* opt, mirspec_report** out);
MIRSPEC_API void mirspec_report_destroy(mirspec_report* r);
MIRSPEC_API size_t mirspec_report_size(const mirspec_report* r);
MIRSPEC_API const char* mirspec_report_name(const mirspec_report* r, size_t i);
MIRSPEC_API int mirspec_report_passed(const mirspec_report* r, size_t i);
MIRSPEC_API double mirspec_report_measure(const mirspec_report* r, size_t i);
MIRSPEC_API double mirspec_report_bound(const mirspec_report* r, size_t i);
MIRSPEC_API const char* mirspec_report_detail(const mirspec_report* r, size_t i);
MIRSPEC_API int mirspec_report_all_passed(const mirspec_report* r);

#ifdef __cplusplus
}
#endif

#endif /* MIRSPEC_H */
