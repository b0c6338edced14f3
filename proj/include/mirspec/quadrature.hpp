// Gauss-Legendre rules at arbitrary precision and an adaptive composite driver.
#pragma once

#include <string>
#include <vector>

#include "mirspec/error.hpp"
#include "mirspec/real.hpp"

namespace mirspec {

class GaussLegendre {
 public:
  /// Nodes by Newton iteration on P_n; sorted ascending on [-1, 1].
  GaussLegendre(int n, Precision prec);

  int order() const { return static_cast<int>(x_.size()); }
  Precision precision() const { return prec_; }
  const std::vector<Real>& nodes() const { return x_; }
  const std::vector<Real>& weights() const { return w_; }

  /// Node i mapped to [a, b].
  Real node(size_t i, const Real& a, const Real& b) const {
    return (a + b) / 2.0 + (b - a) / 2.0 * x_[i];
  }

  template <class F>
  auto apply(F&& f, const Real& a, const Real& b) const -> decltype(f(a)) {
    const Real half = (b - a) / 2.0;
    auto acc = f(node(0, a, b)) * w_[0];
    for (size_t i = 1; i < x_.size(); ++i) acc += f(node(i, a, b)) * w_[i];
    return acc * half;
  }

 private:
  Precision prec_;
  std::vector<Real> x_, w_;
};

/// Recursive bisection: a panel is accepted when the rule on it and on its two
/// halves agree to tol scaled by the panel's share of [a, b].
template <class F>
auto integrate(const GaussLegendre& gl, F&& f, const Real& a, const Real& b, const Real& tol,
               int max_depth = 48) -> decltype(f(a)) {
  using T = decltype(f(a));
  const Real total = abs(b - a);
  struct Rec {
    const GaussLegendre& gl;
    F& f;
    const Real& tol;
    const Real& total;
    int max_depth;
    T run(const Real& lo, const Real& hi, const T& whole, int depth) {
      const Real mid = (lo + hi) / 2.0;
      T left = gl.apply(f, lo, mid);
      T right = gl.apply(f, mid, hi);
      T both = left + right;
      if (abs(both - whole) <= tol * (abs(hi - lo) / total)) return both;
      if (depth >= max_depth)
        throw NumericalError("quadrature did not converge on [" + lo.to_string(12) + ", " +
                             hi.to_string(12) + "]");
      return run(lo, mid, left, depth + 1) + run(mid, hi, right, depth + 1);
    }
  };
  if (total.is_zero()) return gl.apply(f, a, a) * 0.0;
  Rec rec{gl, f, tol, total, max_depth};
  return rec.run(a, b, gl.apply(f, a, b), 0);
}

}  // namespace mirspec
