// Shared helpers for the unit tests: reference data, contexts, comparisons.
#pragma once

#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "mirspec/precision.hpp"
#include "mirspec/verify.hpp"

namespace test {

using mirspec::Complex;
using mirspec::ModularParam;
using mirspec::PrecCtx;
using mirspec::Real;

// Seed for every randomized property in the suite.
constexpr std::uint64_t kSeed = 20240917;

/// tests/data/reference.json, written by tests/oracle/make_reference.py (mpmath).
inline const nlohmann::json& ref() {
  static const nlohmann::json j = [] {
    std::ifstream f(MIRSPEC_TEST_DATA "/reference.json");
    REQUIRE_MESSAGE(f.good(), "missing reference data");
    return nlohmann::json::parse(f);
  }();
  return j;
}

inline const PrecCtx& ctx192() {
  static const PrecCtx c = PrecCtx::make(192, "1e-40");
  return c;
}
inline const PrecCtx& ctx64() {
  static const PrecCtx c = PrecCtx::make(64, "1e-10");
  return c;
}
inline const ModularParam& mp192() {
  static const ModularParam m = ModularParam::pi_over_4(ctx192());
  return m;
}

inline Real R(const std::string& s, const PrecCtx& c = ctx192()) { return Real::from_string(s, c.bits); }
inline Real R(const nlohmann::json& j, const PrecCtx& c = ctx192()) { return R(j.get<std::string>(), c); }
inline Complex C(const nlohmann::json& j, const PrecCtx& c = ctx192()) { return {R(j.at(0), c), R(j.at(1), c)}; }
inline Complex C(double re, double im, const PrecCtx& c = ctx192()) { return c.complex(re, im); }

inline double d(const Real& x) { return x.to_double(); }
inline double dist(const Complex& a, const Complex& b) { return abs(a - b).to_double(); }
inline double dist(const Real& a, const Real& b) { return abs(a - b).to_double(); }
inline double rel(const Complex& a, const Complex& b) {
  const double s = std::max(abs(a).to_double(), abs(b).to_double());
  return s == 0 ? 0 : dist(a, b) / s;
}

/// Absolute difference below 10^-digits against a printed decimal; compares in
/// the working precision, never through double.
inline bool agrees(const Real& x, const std::string& printed, double bound) {
  return abs(x - Real::from_string(printed, x.precision())) < bound;
}

inline double tol(const PrecCtx& c) { return c.tol.to_double(); }

}  // namespace test
