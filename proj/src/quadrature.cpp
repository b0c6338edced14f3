#include "mirspec/quadrature.hpp"

#include <cmath>

namespace mirspec {

GaussLegendre::GaussLegendre(int n, Precision prec) : prec_(prec) {
  if (n < 2) throw InvalidArgument("Gauss-Legendre order must be at least 2");
  const Real eps = Real::pow2(-static_cast<long>(prec) + 4, prec);
  const Real pi = Real::pi(prec);
  x_.reserve(n);
  w_.reserve(n);
  for (int i = n; i >= 1; --i) {
    // i-th root from the top, seeded by the Tricomi estimate
    Real x = cos(pi * ((i - 0.25) / (n + 0.5)));
    Real dp(prec);
    for (int it = 0; it < 100; ++it) {
      Real p0(1L, prec), p1 = x;
      for (int k = 2; k <= n; ++k) {
        Real p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const Real dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= eps) break;
    }
    // one more derivative at the converged node for the weight
    Real p0(1L, prec), p1 = x;
    for (int k = 2; k <= n; ++k) {
      Real p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = std::move(p1);
      p1 = std::move(p2);
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    w_.push_back(2.0 / ((1.0 - x * x) * dp * dp));
    x_.push_back(std::move(x));
  }
}

}  // namespace mirspec
