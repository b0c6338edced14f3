// The b = 1 problem: periods of (x + lambda / sin 2 pi x) dy on the curve
// cos 2 pi x + cos 2 pi y = eps/2, quantization of eps and the eigenfunction
// phi built from the exponentiated path integral.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mirspec/precision.hpp"

namespace mirspec {

struct AlphaBeta {
  Real alpha;  // eps = 2 + 2 cosh(2 pi alpha)
  Real beta;   // sinh(pi beta) = cosh(pi alpha), beta > 0
};
AlphaBeta alpha_beta(const Real& eps, const PrecCtx& ctx);

struct PathValues {
  Real r, rprime;  // cosh(2 pi r) = 1 - cos(pi t) + cosh(2 pi alpha)
  Real s, sprime;  // sinh(pi s) = sinh(pi alpha) sin(pi t)
};
PathValues path_funcs(const Real& eps, const Real& t, const PrecCtx& ctx);

struct PeriodIntegrals {
  Real A, At, B, Bt;
};
PeriodIntegrals period_integrals(const Real& eps, const PrecCtx& ctx, int order = 32);

/// (A Bt - B At) / B - (n + 1).
Real level_function(const Real& eps, int n, const PrecCtx& ctx);

struct SelfDualSpectrum {
  int n = 0;
  Real eps, alpha, beta, lambda;
  Real A, At, B, Bt;
  Real residual;  // A lambda - At - (n + 1)
};

/// Record at an arbitrary eps > 4 (not necessarily quantized).
SelfDualSpectrum selfdual_record(const Real& eps, int n, const PrecCtx& ctx);

struct LevelScan {
  std::vector<double> eps;
  std::vector<double> F0;  // level function for n = 0; F_n = F0 - n
  /// Number of sign changes of F_n on the grid.
  int sign_changes(int n) const;
};
/// Geometric scan of eps - 4 from 1e-2 to 1e6 - 4 at 64 bits.
LevelScan scan_levels(int npoints = 161);

SelfDualSpectrum quantize_selfdual(int n, const PrecCtx& ctx);

/// A point on the curve reached by a path from (i alpha, 0): the path integral I
/// and the second coordinate y, with w = sin(2 pi y) tracked continuously.
struct CurvePoint {
  Complex x, y, w, integral;
};

/// End point of the canonical path to x = i t.
CurvePoint canonical_point(const Real& t, const SelfDualSpectrum& spec, const PrecCtx& ctx);

/// Continues a point along straight segments through the given waypoints,
/// following y by continuity.
CurvePoint continue_path(const CurvePoint& start, const std::vector<Complex>& waypoints,
                         const SelfDualSpectrum& spec, const PrecCtx& ctx);

/// phi(x) = sin(2 pi I) / sin(2 pi y) with the path: canonical to i Im x, then
/// horizontal to x. InvalidArgument ("multivalued") if spec is not quantized.
Complex phi_eval(const Complex& x, const SelfDualSpectrum& spec, const PrecCtx& ctx);

/// Relative residual of phi(x - 1) + phi(x + 1) + (2 cos 2 pi x - eps) phi(x).
Real harper_residual(const Complex& x, const SelfDualSpectrum& spec, const PrecCtx& ctx);

/// A parametrized path tau -> (x, y) with derivatives.
struct PathSample {
  Complex x, y, dx, dy;
};
using CurvePath = std::function<PathSample(const Real& tau)>;

/// Integral of (x + lambda / sin 2 pi x) dy over tau in [a, b].
Complex path_integral(const CurvePath& path, const Real& a, const Real& b, const Real& lambda,
                      const PrecCtx& ctx);

/// xi(tau) = (i s(tau + 1/2), i s(tau)) and zeta(tau) = (i r(tau), tau / 2), tau in [0, 1].
CurvePath xi_path(const Real& eps, const PrecCtx& ctx);
CurvePath zeta_path(const Real& eps, const PrecCtx& ctx);
/// Images under (x, y) -> (-x, y), (x, y) -> (y, x) and (x, y) -> (x, -y).
CurvePath reflect_x(CurvePath p);
CurvePath swap_xy(CurvePath p);
CurvePath reflect_y(CurvePath p);

struct CycleIntegrals {
  Complex xi_cycle;    // xi then its image under (x, y) -> (-x, -y)
  Complex zeta_cycle;  // zeta then its translate zeta-hat
};
CycleIntegrals cycle_integrals(const SelfDualSpectrum& spec, const PrecCtx& ctx);

struct BlochJostReport {
  Real shift_error;     // x -> x + 1 multiplies f by e^{2 pi i y}
  Real homotopy_error;  // canonical vs detour path to the same end point
  Real inverse_error;   // f(x, y) f(x, -y) = 1
};
/// Checks at x = i t1, with the detour ending at i t2 (same path type as t1).
BlochJostReport bloch_jost_check(const Real& t1, const Real& t2, const SelfDualSpectrum& spec,
                                 const PrecCtx& ctx);

}  // namespace mirspec
