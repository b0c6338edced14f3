// Invariant suites shared by the verify command and the acceptance run.
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mirspec/eigenfunction.hpp"
#include "mirspec/selfdual.hpp"

namespace mirspec {

/// Deterministic uniform draws (mt19937_64 bits mapped by hand, so the
/// sequence does not depend on the standard library's distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// r e^{i phi} with r in [rmin, rmax], phi uniform.
  Complex polar(double rmin, double rmax, Precision prec);
  Complex box(double half_width, Precision prec);

 private:
  std::mt19937_64 g_;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double measure = 0;  // worst observed value
  double bound = 0;
  std::string detail;
};

struct VerifyOptions {
  long bits = 192;
  std::string tol = "1e-40";
  std::string theta;  // empty: pi/4
  bool quick = false;
  bool fault = false;  // perturb eps before the pole cancellation check
  std::uint64_t seed = 20240917;
  int sheets = 2;      // strong-coupling states are taken from sheets 1..sheets
  double selfdual_tol = 1e-35;
};

using Progress = std::function<void(const CheckResult&)>;

CheckResult check_functional_equations(const ModularParam& mp, const PrecCtx& ctx, Rng& rng, int npoints);
CheckResult check_oracle_grid(const ModularParam& mp, const PrecCtx& ctx, int n);
CheckResult check_multiplication(const ModularParam& mp, const PrecCtx& ctx, int nmax);
CheckResult check_wronskian(const ModularParam& mp, const PrecCtx& ctx, Rng& rng, int npoints);
CheckResult check_theta(const ModularParam& mp, const PrecCtx& ctx, Rng& rng, int npoints);
CheckResult check_crochet(const ModularParam& mp, const PrecCtx& ctx, Rng& rng, int npoints);
CheckResult check_limits(const ModularParam& mp, const PrecCtx& ctx, Rng& rng, int ntraj);

/// Parity, reality, decay, difference equations and pole cancellation at the states.
CheckResult check_eigenfunctions(const std::vector<SpectralPoint>& states, const ModularParam& mp,
                                 const PrecCtx& ctx, Rng& rng, int nparity, bool fault);
/// Quantized states of sheets 1..nsheets, both parities.
std::vector<SpectralPoint> quantized_states(int nsheets, const ModularParam& mp, const PrecCtx& ctx);

/// Cycle integrals, Harper residual on the imaginary axis and the Bloch-Jost checks.
CheckResult check_selfdual(const SelfDualSpectrum& spec, const PrecCtx& ctx, double harper_bound);

std::vector<CheckResult> run_verify(const VerifyOptions& opt, const Progress& progress = {});

}  // namespace mirspec
