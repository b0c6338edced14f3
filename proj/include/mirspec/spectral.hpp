// Wronskian zeros W(e^{2 pi b sigma}, eps) = 0: Newton solves, orbit
// continuation over sigma in [0, sin theta] and the quantization condition.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mirspec/chi.hpp"

namespace mirspec {

ValueDeriv wronskian_eval(const Complex& u, const Complex& eps, const ModularParam& mp,
                          const PrecCtx& ctx);

/// Coefficient of u^{-1} in the Laurent expansion of W from the chi series:
/// sum_m c_m^2 (q^{-2m} - q^{2m+2}).
Complex wronskian_residue_series(const Complex& eps, const ModularParam& mp, const PrecCtx& ctx);
/// Same coefficient as the trapezoid average of u W(u) over |u| = 1.
Complex wronskian_residue_contour(const Complex& eps, const ModularParam& mp, const PrecCtx& ctx,
                                  int npoints = 64);

/// s = e^{2 pi b sigma}.
Complex s_of_sigma(const Real& sigma, const ModularParam& mp);

struct SolveResult {
  Complex eps;
  int iterations = 0;
  std::vector<Real> residuals;  // |W| per iterate, first entry at the seed
};

/// Newton on W(s, eps) = 0 in eps at fixed sigma. NumericalError on failure.
SolveResult solve_eps(const Real& sigma, const Complex& eps0, const ModularParam& mp,
                      const PrecCtx& ctx, int max_iter = 60);

enum class Endpoint { zero, sin_theta };

/// Heuristic Newton seed for eps_k at an orbit endpoint, from the printed
/// q-expansions when available, else from the spiral eps ~ e^{2 pi b sigma}.
Complex sheet_seed(int k, Endpoint e, const ModularParam& mp, const PrecCtx& ctx);
/// True when sheet_seed(k, e) comes from a printed expansion.
bool sheet_seed_is_series(int k, Endpoint e);

struct OrbitSample {
  Real sigma;
  Complex eps;
  bool on_grid = false;
};

struct Orbit {
  int sheet = 0;
  std::vector<OrbitSample> samples;  // increasing sigma; grid points flagged
  Real step;                         // nominal grid spacing
  int newton_total = 0;

  std::vector<OrbitSample> grid() const;
};

/// Continuation from the sigma = 0 end (or from sin theta when `from_end`).
/// The returned samples are always in increasing sigma.
Orbit trace_orbit(int k, int npoints, const ModularParam& mp, const PrecCtx& ctx,
                  bool from_end = false);

struct SpectralPoint {
  int sheet = 0;
  Real sigma;
  Complex eps;
  int parity = 0;  // +1 even, -1 odd, 0 none
  Real condition_residual;  // |Re G/|G|| (even) or |Im G/|G|| (odd)
  Real wronskian_residual;  // |W(s, eps)|
};

struct QuantizeResult {
  std::vector<SpectralPoint> states;
  std::vector<std::string> excluded;  // endpoint cases, with reason
};

QuantizeResult quantize(const Orbit& orbit, int parity, const ModularParam& mp, const PrecCtx& ctx);

struct WronskianFactorization {
  Real sigma;
  Complex s;
  Complex rho;
  Complex eps;
  Real spread;  // relative spread of rho over the test points
};

/// rho = W(u0) / (theta1(s u0) theta1(u0/s)) at u0 = e^{2 pi b x0}, x0 in {0.1, 0.23, 0.37}.
WronskianFactorization rho_extract(const Real& sigma, const Complex& eps, const ModularParam& mp,
                                   const PrecCtx& ctx);

/// G(s, eps) with s = e^{2 pi b sigma}.
Complex G_at_sigma(const Real& sigma, const Complex& eps, const ModularParam& mp, const PrecCtx& ctx);

}  // namespace mirspec
