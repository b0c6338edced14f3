// Transfer-matrix products M_n(u) = L(u) L(q^2 u) ... and the R/P dynamics.
// Used as an independent route to chi.
#pragma once

#include <vector>

#include "mirspec/precision.hpp"

namespace mirspec {

struct Mat2 {
  Complex a, b, c, d;  // ((a, b), (c, d))

  Complex det() const { return a * d - b * c; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
};

/// L(u) = ((1 - eps u + u^2, -q^2 u^2), (1, 0)).
Mat2 L_eval(const Complex& u, const Complex& eps, const ModularParam& mp, const PrecCtx& ctx);
/// Ordered product L(u) L(q^2 u) ... L(q^{2(n-1)} u), n >= 1.
Mat2 M_n_eval(const Complex& u, long n, const Complex& eps, const ModularParam& mp, const PrecCtx& ctx);

struct ChiPair {
  Complex chi_at_u;          // chi(u), entry (2,1) of M_infinity
  Complex chi_at_u_over_q2;  // chi(u/q^2), entry (1,1)
  long factors = 0;
};
ChiPair chi_via_Minf(const Complex& u, const Complex& eps, const ModularParam& mp, const PrecCtx& ctx);

enum class OrbitLimit { zero, one, undecided, blowup };
const char* orbit_limit_name(OrbitLimit l);

struct ROrbit {
  std::vector<Complex> values;  // R(q^{2k} z), k = 0..steps
  OrbitLimit limit = OrbitLimit::undecided;
  bool critical = false;  // start within 10 tol of the chi trajectory
  long blowup_step = -1;  // first step with |value| > 1e6, if any
};

/// Forward iteration R(q^2 u) = q^2 u^2 / ((1 - eps u + u^2) - R(u)).
/// The chi trajectory R_chi(z) = chi(z/q^2)/chi(z) is unstable under forward
/// iteration; starting on it the values approach 1 and then depart once
/// rounding error is amplified. Reaching 1 within 1e-6 classifies as `one`.
ROrbit R_orbit(const Complex& z, const Complex& R0, long steps, const Complex& eps,
               const ModularParam& mp, const PrecCtx& ctx);

/// P(u) = 1 - eps u + u^2 - R(u) along the same trajectory, classified like R.
ROrbit P_orbit(const Complex& z, const Complex& P0, long steps, const Complex& eps,
               const ModularParam& mp, const PrecCtx& ctx);

}  // namespace mirspec
