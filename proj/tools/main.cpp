// mirror-spectra: spectra of the quantized mirror curve u + 1/u + v + 1/v = eps
// at strong coupling and in the self-dual case. Uses only the C interface.
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <cstring>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mirspec/mirspec.h"
#include "output.hpp"

namespace {

// Fixed seed for the random test points of the verify suites; recorded in every header.
constexpr unsigned long long kSeed = 20240917ULL;

enum Exit { kOk = 0, kCheck = 1, kNumerical = 2, kConfig = 3 };

struct Failure {
  mirspec_status status;
  std::string what;
};

int exit_code(mirspec_status s) {
  switch (s) {
    case MIRSPEC_OK: return kOk;
    case MIRSPEC_E_CHECK: return kCheck;
    case MIRSPEC_E_INVALID: return kConfig;
    default: return kNumerical;
  }
}

void ok(mirspec_status s, const char* what) {
  if (s != MIRSPEC_OK) throw Failure{s, std::string(what) + ": " + mirspec_last_error()};
}

template <class T, void (*D)(T*)>
struct Deleter {
  void operator()(T* p) const { D(p); }
};
using CtxPtr = std::unique_ptr<mirspec_context, Deleter<mirspec_context, mirspec_context_destroy>>;
using OrbitPtr = std::unique_ptr<mirspec_orbit, Deleter<mirspec_orbit, mirspec_orbit_destroy>>;
using StatesPtr = std::unique_ptr<mirspec_states, Deleter<mirspec_states, mirspec_states_destroy>>;
using SdPtr = std::unique_ptr<mirspec_selfdual, Deleter<mirspec_selfdual, mirspec_selfdual_destroy>>;
using ReportPtr = std::unique_ptr<mirspec_report, Deleter<mirspec_report, mirspec_report_destroy>>;

struct Config {
  std::string theta;  // empty: pi/4
  long bits = 192;
  std::string tol;    // empty: derived from bits
  int digits = 18;
  std::string format = "csv";
  std::string out;
  std::vector<int> sheets;
  std::string parity = "both";
  int n = 0;
  int npoints = 64;
  bool verify = false;
  bool quick = false;
  bool log_scale = false;
  bool fault = false;
};

std::string default_tol(long bits) {
  const long e = std::min(std::lround(bits * 40.0 / 192.0), static_cast<long>(std::floor((bits - 24) * 0.30103)));
  return "1e-" + std::to_string(std::max(e, 1L));
}

CtxPtr make_context(const Config& c, bool with_theta) {
  mirspec_context* raw = nullptr;
  ok(mirspec_context_create(c.bits, c.tol.c_str(), with_theta && !c.theta.empty() ? c.theta.c_str() : nullptr, &raw),
     "configuration");
  CtxPtr ctx(raw);
  if (with_theta && mirspec_context_flagged(ctx.get()))
    std::cerr << "warning: theta below pi/8 is outside the well-tested range\n";
  return ctx;
}

cli::Meta meta_for(const Config& c, const mirspec_context* ctx, bool with_theta) {
  char th[128], st[128], tol[64];
  ok(mirspec_context_describe(ctx, std::min(c.digits, 40), th, st, tol, sizeof th), "describe");
  cli::Meta m{{"tool", std::string("mirror-spectra ") + mirspec_version()}};
  if (with_theta) {
    m.emplace_back("theta", th);
    m.emplace_back("sin_theta", st);
  } else {
    m.emplace_back("theta", "self-dual (b = 1)");
  }
  m.emplace_back("precision_bits", std::to_string(c.bits));
  m.emplace_back("tol", tol);
  m.emplace_back("digits", std::to_string(c.digits));
  m.emplace_back("seed", std::to_string(kSeed));
  return m;
}

std::string state_str(const mirspec_states* s, size_t i, mirspec_field f, int digits) {
  char buf[4096];
  ok(mirspec_states_get(s, i, f, digits, buf, sizeof buf), "format");
  return buf;
}

std::string orbit_str(const mirspec_orbit* o, size_t i, mirspec_field f, int digits) {
  char buf[4096];
  ok(mirspec_orbit_get(o, i, f, digits, buf, sizeof buf), "format");
  return buf;
}

cli::Format parse_format(const std::string& f) { return f == "json" ? cli::Format::json : cli::Format::csv; }

// Writes to --out (or stdout).
void emit(const Config& c, const cli::Meta& meta, const cli::Table& t, const std::string& path) {
  if (path.empty() || path == "-") {
    cli::write_table(std::cout, parse_format(c.format), meta, t);
    return;
  }
  std::ofstream f(path);
  if (!f) throw Failure{MIRSPEC_E_INVALID, "cannot open " + path + " for writing"};
  cli::write_table(f, parse_format(c.format), meta, t);
}

int cmd_spectrum(const Config& c) {
  const CtxPtr ctx = make_context(c, true);
  std::vector<int> parities;
  if (c.parity != "odd") parities.push_back(1);
  if (c.parity != "even") parities.push_back(-1);

  cli::Table t;
  t.columns = {"sheet", "parity", "sigma", "eps_re", "eps_im", "cond_residual"};
  if (c.verify) t.columns.insert(t.columns.end(), {"psi_r1", "psi_r2", "pole"});
  bool check_failed = false;
  for (int sheet : c.sheets) {
    mirspec_orbit* ro = nullptr;
    ok(mirspec_orbit_trace(ctx.get(), sheet, c.npoints, 0, &ro), "orbit continuation");
    OrbitPtr orbit(ro);
    for (int par : parities) {
      mirspec_states* rs = nullptr;
      ok(mirspec_states_quantize(ctx.get(), orbit.get(), par, &rs), "quantization");
      StatesPtr st(rs);
      for (size_t i = 0; i < mirspec_states_excluded_size(st.get()); ++i) {
        const std::string note =
            "sheet " + std::to_string(sheet) + " excluded: " + mirspec_states_excluded(st.get(), i);
        if (std::find(t.notes.begin(), t.notes.end(), note) == t.notes.end()) t.notes.push_back(note);
      }
      if (c.verify) {
        const mirspec_status s = mirspec_states_verify(ctx.get(), st.get(), c.fault ? 1e-5 : 0.0);
        if (s == MIRSPEC_E_CHECK) {
          check_failed = true;
          std::cerr << "check failed: sheet " << sheet << ": " << mirspec_last_error() << '\n';
        } else {
          ok(s, "verification");
        }
      }
      for (size_t i = 0; i < mirspec_states_size(st.get()); ++i) {
        std::vector<std::string> row = {std::to_string(sheet), par > 0 ? "even" : "odd",
                                        state_str(st.get(), i, MIRSPEC_SIGMA, c.digits),
                                        state_str(st.get(), i, MIRSPEC_EPS_RE, c.digits),
                                        state_str(st.get(), i, MIRSPEC_EPS_IM, c.digits),
                                        state_str(st.get(), i, MIRSPEC_COND_RESIDUAL, 3)};
        if (c.verify)
          for (mirspec_field f : {MIRSPEC_PSI_R1, MIRSPEC_PSI_R2, MIRSPEC_POLE})
            row.push_back(state_str(st.get(), i, f, 3));
        t.rows.push_back(std::move(row));
      }
    }
  }
  emit(c, meta_for(c, ctx.get(), true), t, c.out);
  return check_failed ? kCheck : kOk;
}

// Radial log map used for the joint plot: arg is kept, |z| -> log10(1 + |z|).
std::pair<double, double> log_map(double x, double y) {
  const double r = std::hypot(x, y);
  if (r == 0) return {0, 0};
  const double s = std::log10(1 + r) / r;
  return {x * s, y * s};
}

std::string endpoint_label(const mirspec_orbit* o, size_t i, const char* where, int sheet, int digits) {
  const std::string re = orbit_str(o, i, MIRSPEC_EPS_RE, digits);
  const double im = mirspec_orbit_get_double(o, i, MIRSPEC_EPS_IM);
  const double scale = std::abs(mirspec_orbit_get_double(o, i, MIRSPEC_EPS_RE)) + std::abs(im);
  std::string v = re;
  if (std::abs(im) > 1e-9 * scale) {
    const std::string ims = orbit_str(o, i, MIRSPEC_EPS_IM, digits);
    v += (ims[0] == '-' ? " - " + ims.substr(1) : " + " + ims) + "i";
  }
  return "eps" + std::to_string(sheet) + "(" + where + ") = " + v;
}

int cmd_orbit(const Config& c) {
  const CtxPtr ctx = make_context(c, true);
  cli::Table t;
  t.columns = {"sheet", "sigma", "eps_re", "eps_im"};
  std::vector<cli::Polyline> curves;
  const int label_digits = std::min(c.digits, 12);
  for (int sheet : c.sheets) {
    mirspec_orbit* ro = nullptr;
    ok(mirspec_orbit_trace(ctx.get(), sheet, c.npoints, 0, &ro), "orbit continuation");
    OrbitPtr orbit(ro);
    const size_t m = mirspec_orbit_size(orbit.get());
    cli::Polyline pl;
    pl.label = "sheet " + std::to_string(sheet);
    for (size_t i = 0; i < m; ++i) {
      t.rows.push_back({std::to_string(sheet), orbit_str(orbit.get(), i, MIRSPEC_SIGMA, c.digits),
                        orbit_str(orbit.get(), i, MIRSPEC_EPS_RE, c.digits),
                        orbit_str(orbit.get(), i, MIRSPEC_EPS_IM, c.digits)});
      const double x = mirspec_orbit_get_double(orbit.get(), i, MIRSPEC_EPS_RE);
      const double y = mirspec_orbit_get_double(orbit.get(), i, MIRSPEC_EPS_IM);
      pl.points.push_back(c.log_scale ? log_map(x, y) : std::make_pair(x, y));
    }
    if (m > 0) {
      pl.start_label = endpoint_label(orbit.get(), 0, "0", sheet, label_digits);
      pl.end_label = endpoint_label(orbit.get(), m - 1, "sin theta", sheet, label_digits);
      t.notes.push_back(pl.start_label);
      t.notes.push_back(pl.end_label);
    }
    curves.push_back(std::move(pl));
  }
  const cli::Meta meta = meta_for(c, ctx.get(), true);
  if (c.out.empty() || c.out == "-") {
    emit(c, meta, t, "");
    return kOk;
  }
  // --out BASE writes BASE.csv (or .json) and BASE.svg
  std::string base = c.out;
  for (const char* ext : {".csv", ".json", ".svg"})
    if (base.size() > std::strlen(ext) && base.ends_with(ext)) base.resize(base.size() - std::strlen(ext));
  emit(c, meta, t, base + (c.format == "json" ? ".json" : ".csv"));
  std::ofstream svg(base + ".svg");
  if (!svg) throw Failure{MIRSPEC_E_INVALID, "cannot open " + base + ".svg for writing"};
  std::string title = "eps_k(sigma), sigma in [0, sin theta]";
  cli::write_svg(svg, curves, title, c.log_scale ? "Re, radial log10(1 + |eps|)" : "Re eps",
                 c.log_scale ? "Im, radial log10(1 + |eps|)" : "Im eps");
  return kOk;
}

int cmd_selfdual(const Config& c) {
  const CtxPtr ctx = make_context(c, false);
  mirspec_selfdual* raw = nullptr;
  ok(mirspec_selfdual_quantize(ctx.get(), c.n, &raw), "self-dual quantization");
  SdPtr sd(raw);
  cli::Table t;
  t.columns = {"n", "eps", "log_eps", "alpha", "beta", "lambda", "A", "A_tilde", "B", "B_tilde", "residual"};
  std::vector<std::string> row{std::to_string(c.n)};
  char buf[4096];
  for (int f = MIRSPEC_SD_EPS; f <= MIRSPEC_SD_RESIDUAL; ++f) {
    const int d = f == MIRSPEC_SD_RESIDUAL ? 3 : c.digits;
    ok(mirspec_selfdual_get(sd.get(), static_cast<mirspec_sd_field>(f), d, buf, sizeof buf), "format");
    row.emplace_back(buf);
  }
  t.rows.push_back(std::move(row));
  emit(c, meta_for(c, ctx.get(), false), t, c.out);
  return kOk;
}

void print_check(const char* name, int passed, double measure, double bound, const char* detail, void*) {
  std::cerr << (passed ? "PASS " : "FAIL ") << name << "  worst " << measure << "  bound " << bound;
  if (detail && *detail) std::cerr << "  (" << detail << ")";
  std::cerr << '\n';
}

int cmd_verify(const Config& c) {
  mirspec_verify_options o{};
  o.bits = c.bits;
  o.tol = c.tol.c_str();
  o.theta = c.theta.empty() ? nullptr : c.theta.c_str();
  o.quick = c.quick;
  o.fault = c.fault;
  o.seed = kSeed;
  o.progress = print_check;
  mirspec_report* raw = nullptr;
  ok(mirspec_verify_run(&o, &raw), "verify");
  ReportPtr rep(raw);

  cli::Table t;
  t.columns = {"check", "passed", "worst", "bound"};
  std::vector<std::string> failed;
  for (size_t i = 0; i < mirspec_report_size(rep.get()); ++i) {
    const std::string name = mirspec_report_name(rep.get(), i);
    std::ostringstream m, b;
    m << std::setprecision(3) << mirspec_report_measure(rep.get(), i);
    b << std::setprecision(3) << mirspec_report_bound(rep.get(), i);
    const bool p = mirspec_report_passed(rep.get(), i);
    t.rows.push_back({name, p ? "1" : "0", m.str(), b.str()});
    if (!p) failed.push_back(mirspec_report_name(rep.get(), i));
  }
  cli::Meta meta{{"tool", std::string("mirror-spectra ") + mirspec_version()},
                 {"theta", c.theta.empty() ? "pi/4" : c.theta},
                 {"precision_bits", c.quick ? "64" : std::to_string(c.bits)},
                 {"tol", c.quick ? "1e-10" : c.tol},
                 {"seed", std::to_string(kSeed)}};
  emit(c, meta, t, c.out);
  for (const auto& f : failed) std::cerr << "verify: check failed: " << f << '\n';
  return failed.empty() ? kOk : kCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of the quantized mirror curve u + 1/u + v + 1/v = eps"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Config c;
  auto* bits_opt = app.add_option("--precision-bits", c.bits, "working precision in bits (env MIRROR_SPECTRA_PRECISION)")
                       ->check(CLI::Range(64L, 1L << 20));
  app.add_option("--theta", c.theta, "coupling angle, b = e^{i theta} (default pi/4)");
  app.add_option("--tol", c.tol, "target tolerance (default 1e-40 at 192 bits)");
  app.add_option("--digits", c.digits, "significant digits in the output")->check(CLI::Range(1, 2000));
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", c.out, "output file (orbit: base name for .csv/.json and .svg)");

  auto* spectrum = app.add_subcommand("spectrum", "quantized states on the given sheets");
  spectrum->add_option("--sheet", c.sheets, "sheet index k >= 1 (repeatable, or 1,2,3)")->required()->delimiter(',');
  spectrum->add_option("--parity", c.parity, "even, odd or both")->check(CLI::IsMember({"even", "odd", "both"}));
  spectrum->add_option("--npoints", c.npoints, "continuation grid points")->check(CLI::Range(8, 100000));
  spectrum->add_flag("--verify", c.verify, "add difference-equation and pole-cancellation residuals");
  spectrum->add_flag("--fault", c.fault, "detune eps by 1e-5 before --verify (negative control)");

  auto* orbit = app.add_subcommand("orbit", "trace eps_k(sigma) over [0, sin theta]");
  orbit->add_option("--sheet", c.sheets, "sheet index k >= 1 (repeatable, or 1,2,3)")->required()->delimiter(',');
  orbit->add_option("--npoints", c.npoints, "grid points")->check(CLI::Range(8, 100000));
  orbit->add_flag("--log-scale", c.log_scale, "radial log scale in the plot");

  auto* selfdual = app.add_subcommand("selfdual", "self-dual level n (b = 1)");
  selfdual->add_option("--n", c.n, "level")->check(CLI::Range(0, 1000));

  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_flag("--quick", c.quick, "64 bits, tol 1e-10, smaller samples");
  verify->add_flag("--fault", c.fault, "detune eps before the pole-cancellation check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? kOk : kConfig;
  }

  if (const char* env = std::getenv("MIRROR_SPECTRA_PRECISION"); env && *env) {
    char* end = nullptr;
    const long b = std::strtol(env, &end, 10);
    if (*end != '\0' || b < 64) {
      std::cerr << "error: MIRROR_SPECTRA_PRECISION must be an integer >= 64, got '" << env << "'\n";
      return kConfig;
    }
    if (bits_opt->count() > 0 && b != c.bits)
      std::cerr << "note: MIRROR_SPECTRA_PRECISION=" << b << " overrides --precision-bits " << c.bits << '\n';
    c.bits = b;
  }
  if (c.tol.empty()) c.tol = default_tol(c.bits);
  for (int k : c.sheets)
    if (k < 1) {
      std::cerr << "error: --sheet must be >= 1\n";
      return kConfig;
    }

  try {
    if (*spectrum) return cmd_spectrum(c);
    if (*orbit) return cmd_orbit(c);
    if (*selfdual) return cmd_selfdual(c);
    if (*verify) return cmd_verify(c);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.what << '\n';
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kConfig;
}
