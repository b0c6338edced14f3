// Precision policy, coupling parameters, q-Pochhammer symbols and theta_1.
#pragma once

#include <string_view>

#include "mirspec/real.hpp"

namespace mirspec {

struct PrecCtx {
  Precision bits = 192;
  Real tol;
  long max_terms = 4000;

  /// Validates the pair; throws InvalidArgument when tol is not reachable at `bits`.
  static PrecCtx make(long bits, const Real& tol, long max_terms = 4000);
  static PrecCtx make(long bits, std::string_view tol, long max_terms = 4000);
  static PrecCtx make(long bits, double tol, long max_terms = 4000);

  Real real(double x) const { return Real(x, bits); }
  Real real(std::string_view s) const { return Real::from_string(s, bits); }
  Complex complex(double re, double im = 0.0) const { return Complex(re, im, bits); }
  Real pi() const { return Real::pi(bits); }
  /// log2(tol), used for cheap magnitude comparisons.
  long tol_log2() const;
  /// Same context at twice the bits and half the tolerance.
  PrecCtx refined() const;
};

/// Approximate log2 of |z| (within one unit); very negative for zero.
long lmag(const Complex& z);
long lmag(const Real& x);

struct ModularParam {
  Real theta;
  Complex b;
  Complex q;
  Complex qbar;
  Complex log_q;     // i pi b^2
  Complex log_qbar;  // -i pi b^-2
  bool flagged = false;  // theta below the well-tested range [pi/8, pi/2)

  /// b = e^{i theta}; rejects theta with |q| >= 1 or |qbar| >= 1.
  static ModularParam make(const Real& theta, const PrecCtx& ctx);
  static ModularParam pi_over_4(const PrecCtx& ctx);

  /// The conjugate problem: b -> 1/b, q <-> qbar.
  ModularParam conjugate() const;
  Real sin_theta() const { return sin(theta); }
  Real cos_theta() const { return cos(theta); }
};

/// (x;q)_n for n >= 0.
Complex pochhammer_q(const Complex& x, const Complex& q, long n, const PrecCtx& ctx);
/// (x;q)_infinity; requires |q| < 1.
Complex pochhammer_q_inf(const Complex& x, const Complex& q, const PrecCtx& ctx);

/// theta_1 with u^{n+1/2} := e^{w (n+1/2)} and q^{(n+1/2)^2} := e^{log_q (n+1/2)^2}.
Complex theta1(const Complex& w, const Complex& log_q, const PrecCtx& ctx);

}  // namespace mirspec
