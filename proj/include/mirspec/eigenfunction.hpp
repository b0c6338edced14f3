// Closed-form eigenfunction psi(x) at a quantized (sigma, eps, parity) and
// the checks it must pass.
#pragma once

#include "mirspec/spectral.hpp"

namespace mirspec {

struct EigenfunctionParams {
  SpectralPoint point;
  ModularParam mp;
  Complex eta;  // (b + 1/b)/2
  Complex rho;

  /// Fills eta and rho from the point (rho via rho_extract).
  static EigenfunctionParams make(const SpectralPoint& p, const ModularParam& mp, const PrecCtx& ctx);
};

enum class PsiPart { full, chi_check_first, chi_first };

/// psi(x) for complex x. Near the real zeros of the theta denominator the value
/// is obtained by interpolation from nearby points; for an unquantized point
/// (parity 0) a PoleError is raised instead.
Complex psi_eval(const Complex& x, const EigenfunctionParams& p, const PrecCtx& ctx,
                 PsiPart part = PsiPart::full);

struct PsiResidual {
  Real r1;  // shift by i b with eps
  Real r2;  // shift by i/b with conj(eps)
};
PsiResidual psi_residual(const Real& x, const EigenfunctionParams& p, const PrecCtx& ctx);

struct PoleReport {
  Real max_normalized;  // max over u in {s, q^2 s, 1/s}
  Real at_s, at_q2s, at_sinv;
};
PoleReport pole_cancellation_check(const EigenfunctionParams& p, const PrecCtx& ctx);

/// Distance from x to the nearest zero of theta1(s u) theta1(u/s), u = e^{2 pi b x}.
Real theta_zero_distance(const Complex& x, const EigenfunctionParams& p, Complex* nearest = nullptr);

}  // namespace mirspec
