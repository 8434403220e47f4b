// novikov_cli: command-line front end to the header library.
//
// Exit codes: 0 success, 1 numerical failure (including failed verify checks),
// 2 usage error.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "novikov/novikov.hpp"

namespace {

using namespace novikov;

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct Shared {
  double b = 1.0;
  double k = 1.0;
  double a = 0.0;
  double xi = 0.01;
  int N = 32;
  std::string mode = "both";
  std::string out;
  double tol = 1e-12;
};

void add_wave_flags(CLI::App* cmd, Shared& s) {
  cmd->add_option("--b", s.b, "integration constant b > 0")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--k", s.k, "wavenumber k > 0")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--a", s.a, "amplitude a (first cosine coefficient)")->capture_default_str();
  cmd->add_option("--N", s.N, "Fourier truncation")->check(CLI::Range(8, 512))->capture_default_str();
  cmd->add_option("--out", s.out, "machine-readable output file");
}

void add_mode_flag(CLI::App* cmd, Shared& s) {
  cmd->add_option("--mode", s.mode, "asymptotic | numeric | both")
      ->check(CLI::IsMember({"asymptotic", "numeric", "both"}))
      ->capture_default_str();
}

void add_xi_flag(CLI::App* cmd, Shared& s) {
  cmd->add_option("--xi", s.xi, "Bloch frequency in [-1/2, 1/2)")
      ->check(CLI::Range(-0.5, 0.5))
      ->capture_default_str();
}

std::string fmt(double x) { return format_double(x); }

std::string fmt(complex z) {
  return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i";
}

int run_profile(const Shared& s) {
  const WaveParams params{s.k, s.b, s.a};
  const Equilibrium eq = equilibrium(s.b, s.k);
  std::printf("k = %s, b = %s, a = %s\n", fmt(s.k).c_str(), fmt(s.b).c_str(), fmt(s.a).c_str());
  std::printf("w0 = %s\nc0 = %s\n", fmt(eq.w0).c_str(), fmt(eq.c0).c_str());
  PeriodicProfile p;
  if (s.mode == "asymptotic") {
    p = asymptotic_profile(params, s.N);
  } else {
    SolveOptions o;
    o.N = s.N;
    o.tol = s.tol;
    p = solve_profile(params, o);
  }
  const ProfileResidual r = profile_residual(p);
  std::printf("profile (%s): c = %s, w_0 = %s, w_2 = %s\n", s.mode == "asymptotic" ? "asymptotic" : "numeric",
              fmt(p.c).c_str(), fmt(p.coeffs[0]).c_str(), fmt(p.coeffs[2]).c_str());
  std::printf("residual = %s, ode residual = %s, quadrature residual = %s\n", fmt(r.integrated).c_str(),
              fmt(r.differential).c_str(), fmt(quadrature_check(p)).c_str());
  if (s.mode == "both") {
    const PeriodicProfile q = asymptotic_profile(params, s.N);
    double gap = std::abs(p.c - q.c);
    for (std::size_t n = 0; n < p.coeffs.size(); ++n) gap = std::max(gap, std::abs(p.coeffs[n] - q.coeffs[n]));
    std::printf("max coefficient gap to asymptotic profile = %s\n", fmt(gap).c_str());
  }
  if (!s.out.empty()) write_text_file(s.out, profile_to_json(p));
  return 0;
}

struct SpectrumFlags {
  double xi_min = 0.0, xi_max = 0.0;
  int xi_count = 0;
  int threads = 0;
};

int run_spectrum(const Shared& s, const SpectrumFlags& f) {
  SolveOptions o;
  o.N = s.N;
  o.tol = s.tol;
  const PeriodicProfile p = solve_profile({s.k, s.b, s.a}, o);
  std::vector<double> grid;
  if (f.xi_count > 0) {
    for (int i = 0; i < f.xi_count; ++i)
      grid.push_back(f.xi_count == 1 ? f.xi_min : f.xi_min + (f.xi_max - f.xi_min) * i / (f.xi_count - 1));
  } else {
    grid.push_back(s.xi);
  }
  const std::vector<SpectrumSlice> slices = spectrum_sweep(p, grid, s.N, f.threads);
  for (const SpectrumSlice& slice : slices) {
    std::printf("xi = %s: growth rate = %s; nearest to origin:", fmt(slice.xi).c_str(),
                fmt(origin_growth_rate(slice)).c_str());
    for (const complex& z : nearest_to_origin(slice.eigenvalues, 3)) std::printf("  %s", fmt(z).c_str());
    std::printf("\n");
  }
  const CollisionReport c = collision_check(s.b, s.k, grid.front());
  std::printf("collision chain at xi = %s: %s%s\n", fmt(grid.front()).c_str(), c.strict() ? "strict" : "violated",
              c.advisory ? " (k^2 >= 3, advisory only)" : "");
  if (!s.out.empty()) write_text_file(s.out, spectrum_csv(slices));
  return 0;
}

void print_result(const char* label, const ModulationResult& r) {
  std::printf("[%s] q0 = %s, q1 = %s, q2 = %s, q3 = %s\n", label, fmt(r.q.q0).c_str(), fmt(r.q.q1).c_str(),
              fmt(r.q.q2).c_str(), fmt(r.q.q3).c_str());
  std::printf("[%s] delta = %s\n", label, fmt(r.delta).c_str());
  std::printf("[%s] roots X:", label);
  for (const complex& x : r.roots) std::printf("  %s", fmt(x).c_str());
  std::printf("\n[%s] verdict: %s\n[%s] growth rate = %s%s\n", label, to_string(r.verdict).c_str(), label,
              fmt(r.growth_rate).c_str(), r.in_trust_region ? "" : " (outside trust region |a| <= 0.1, |xi| <= |a|)");
}

int run_classify(const Shared& s) {
  const WaveParams params{s.k, s.b, s.a};
  std::vector<ClassificationRecord> records;
  if (s.mode != "numeric") {
    records.push_back({params, s.xi, classify(params, s.xi)});
    print_result("asymptotic", records.back().result);
  }
  if (s.mode != "asymptotic") {
    ClassifyOptions o;
    o.model = ReducedModel::Numeric;
    o.N = s.N;
    records.push_back({params, s.xi, classify(params, s.xi, o)});
    print_result("numeric", records.back().result);
  }
  if (!s.out.empty()) {
    const bool json = s.out.size() >= 5 && s.out.substr(s.out.size() - 5) == ".json";
    write_text_file(s.out, json ? classification_json(records.front()) : classification_csv(records));
  }
  return 0;
}

struct ThresholdFlags {
  double k_lo = 1.5, k_hi = 2.0;
  double xi_factor = 0.1;
  double xi_fixed = 0.0;
  double width = 1e-4;
  std::string model = "asymptotic";
};

int run_threshold(const Shared& s, const ThresholdFlags& f) {
  ThresholdOptions o;
  o.width = f.width;
  o.N = s.N;
  if (f.model == "numeric") o.model = DiscriminantModel::ReducedNumeric;
  if (f.model == "closed-form") o.model = DiscriminantModel::ClosedFormExpansion;
  const XiRule rule = f.xi_fixed > 0.0 ? XiRule::fixed(f.xi_fixed) : XiRule::proportional(f.xi_factor);
  const double kstar = threshold_locate(s.b, s.a, rule, {f.k_lo, f.k_hi}, o);
  std::printf("k* = %s (model %s, bracket width %s)\n", fmt(kstar).c_str(), f.model.c_str(), fmt(f.width).c_str());
  return 0;
}

struct ScanFlags {
  std::string config;
  double k_min = 1.0, k_max = 2.0;
  int k_count = 11;
  std::vector<double> a_list{0.02};
  double xi_factor = 0.1;
  double xi_fixed = 0.0;
  int threads = 0;
};

int run_scan_command(const Shared& s, const ScanFlags& f, const CLI::App& cmd) {
  ScanConfig cfg;
  if (!f.config.empty()) {
    cfg = scan_config_from_json(read_text_file(f.config));
  } else {
    cfg.b = s.b;
    cfg.a_list = f.a_list;
    cfg.k_min = f.k_min;
    cfg.k_max = f.k_max;
    cfg.k_count = f.k_count;
    cfg.N = s.N;
    cfg.mode = parse_scan_mode(s.mode);
    cfg.xi_rule = f.xi_fixed > 0.0 ? XiRule::fixed(f.xi_fixed) : XiRule::proportional(f.xi_factor);
    cfg.threads = f.threads;
  }
  if (cmd.count("--out") > 0) cfg.output = s.out;
  if (cmd.count("--threads") > 0) cfg.threads = f.threads;
  const StabilityMap map = run_scan(cfg);
  std::size_t stable = 0, unstable = 0, critical = 0, failed = 0;
  for (const StabilityRow& r : map.rows) {
    if (!r.error.empty()) ++failed;
    else if (r.verdict == Verdict::Stable) ++stable;
    else if (r.verdict == Verdict::Unstable) ++unstable;
    else ++critical;
  }
  std::printf("scan (%s): %zu rows, %zu stable, %zu unstable, %zu critical, %zu failed\n",
              to_string(cfg.mode).c_str(), map.rows.size(), stable, unstable, critical, failed);
  for (std::size_t i = 1; i < map.rows.size(); ++i) {
    const StabilityRow &p = map.rows[i - 1], &r = map.rows[i];
    if (p.a == r.a && p.error.empty() && r.error.empty() && p.verdict != r.verdict)
      std::printf("  a = %s: %s -> %s between k = %s and k = %s\n", fmt(r.a).c_str(), to_string(p.verdict).c_str(),
                  to_string(r.verdict).c_str(), fmt(p.k).c_str(), fmt(r.k).c_str());
  }
  if (!cfg.output.empty()) {
    const bool json = cfg.output.size() >= 5 && cfg.output.substr(cfg.output.size() - 5) == ".json";
    write_text_file(cfg.output, json ? stability_map_json(map) : stability_map_csv(map));
  }
  return 0;
}

int run_verify() {
  struct Check {
    std::string name;
    std::function<double()> error;  // measured deviation
    double tol;
  };
  const std::vector<double> ks{0.5, 1.0, 2.0};
  const std::vector<Check> checks{
      {"equilibrium: c0 / w0^2 = (k^2+4)/(k^2+1)",
       [&] {
         double e = 0.0;
         for (double k : ks) {
           const Equilibrium q = equilibrium(1.0, k);
           e = std::max(e, std::abs(q.c0 / (q.w0 * q.w0) - (k * k + 4.0) / (k * k + 1.0)));
         }
         return e;
       },
       1e-13},
      {"equilibrium: (c0 - w0^2)^{3/2} w0 = b",
       [&] {
         double e = 0.0;
         for (double k : ks)
           for (double b : {0.5, 1.0, 4.0}) {
             const Equilibrium q = equilibrium(b, k);
             e = std::max(e, std::abs(std::pow(q.c0 - q.w0 * q.w0, 1.5) * q.w0 - b) / b);
           }
         return e;
       },
       1e-12},
      {"equilibrium: V'(w0; b, c0) = 0",
       [&] {
         double e = 0.0;
         for (double k : ks) {
           const Equilibrium q = equilibrium(1.0, k);
           e = std::max(e, std::abs(potential_derivative(q.w0, 1.0, q.c0)));
         }
         return e;
       },
       1e-12},
      {"dispersion: a = 0 Hill eigenvalues equal i Omega_{n,xi}",
       [&] {
         double e = 0.0;
         for (double k : ks)
           for (double xi : {0.0, 0.1, 0.49}) {
             const BlochMatrix A = build_bloch_matrix(solve_profile({k, 1.0, 0.0}), xi, 32);
             for (int n = -32; n <= 32; ++n) {
               const complex w = constant_state_eigenvalue(n, xi, 1.0, k);
               e = std::max(e, std::abs(A.entries(A.index_of(n), A.index_of(n)) - w) / std::max(1.0, std::abs(w)));
             }
           }
         return e;
       },
       1e-12},
      {"dispersion: a = 0 reduced diagonal equals i xi d(Omega)/d(xi)",
       [&] {
         double e = 0.0;
         for (double k : ks) {
           const Equilibrium q = equilibrium(1.0, k);
           const double k2 = k * k;
           const ReducedMatrix M = reduced_matrix_asymptotic({k, 1.0, 0.0}, 1.0);
           const double pm = 6.0 * k * k2 * q.w0 * q.w0 / ((k2 + 1.0) * (k2 + 1.0));
           const double zero = -3.0 * k * k2 * q.w0 * q.w0 / (k2 + 1.0);
           e = std::max({e, std::abs(M.S(0, 0).imag() - pm) / pm, std::abs(M.S(2, 2).imag() - zero) / std::abs(zero)});
         }
         return e;
       },
       1e-12},
      {"discriminant: pipeline Delta(0, xi) vs closed form (xi = 0.05, 0.1)",
       [&] {
         double e = 0.0;
         for (double k : {1.0, 2.0})
           for (double xi : {0.05, 0.1}) {
             const double closed = discriminant_leading_terms(1.0, k).xi2_coefficient * xi * xi;
             const double pipe = discriminant(cubic_coefficients(reduced_matrix_asymptotic({k, 1.0, 0.0}, xi), xi));
             e = std::max(e, std::abs(pipe - closed) / closed);
           }
         return e;
       },
       1e-8},
      {"discriminant: pipeline Lambda (finite difference, a = 1e-3) vs closed form",
       [&] {
         double e = 0.0;
         for (double k : {1.0, 2.0}) {
           const double xi = 1e-3, a = 1e-3;
           const auto delta = [&](double aa) {
             return discriminant(cubic_coefficients(reduced_matrix_asymptotic({k, 1.0, aa}, xi), xi));
           };
           const double fit = (delta(a) - delta(0.0)) / (a * a);
           const double closed = discriminant_leading_terms(1.0, k).lambda;
           e = std::max(e, std::abs(fit - closed) / std::abs(closed));
         }
         return e;
       },
       1e-2},
  };
  int failed = 0;
  for (const Check& c : checks) {
    double err = NAN;
    std::string note;
    try {
      err = c.error();
    } catch (const std::exception& ex) {
      note = std::string(" (") + ex.what() + ")";
    }
    const bool ok = err <= c.tol;
    failed += !ok;
    std::printf("%s %s: deviation %s, tolerance %s%s\n", ok ? "PASS" : "FAIL", c.name.c_str(), fmt(err).c_str(),
                fmt(c.tol).c_str(), note.c_str());
  }
  std::printf("%zu checks, %d failed\n", checks.size(), failed);
  return failed == 0 ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic traveling waves of the Novikov equation and their modulational stability"};
  app.require_subcommand(1);
  Shared s;

  CLI::App* profile = app.add_subcommand("profile", "construct a wave profile");
  add_wave_flags(profile, s);
  add_mode_flag(profile, s);
  profile->add_option("--tol", s.tol, "Newton residual tolerance")->check(CLI::PositiveNumber)->capture_default_str();

  SpectrumFlags sf;
  CLI::App* spectrum = app.add_subcommand("spectrum", "Hill spectrum of the Bloch operators");
  add_wave_flags(spectrum, s);
  add_xi_flag(spectrum, s);
  spectrum->add_option("--tol", s.tol, "Newton residual tolerance")->check(CLI::PositiveNumber);
  spectrum->add_option("--xi-min", sf.xi_min, "sweep start")->check(CLI::Range(-0.5, 0.5));
  spectrum->add_option("--xi-max", sf.xi_max, "sweep end")->check(CLI::Range(-0.5, 0.5));
  spectrum->add_option("--xi-count", sf.xi_count, "sweep points (0: single --xi)")->check(CLI::NonNegativeNumber);
  spectrum->add_option("--threads", sf.threads, "worker threads (0: NOVIKOV_THREADS or hardware)");

  CLI::App* cls = app.add_subcommand("classify", "modulational stability verdict from the reduced cubic");
  add_wave_flags(cls, s);
  add_mode_flag(cls, s);
  add_xi_flag(cls, s);
  cls->add_option("--tol", s.tol, "critical band for the discriminant sign")->check(CLI::PositiveNumber);

  ThresholdFlags tf;
  CLI::App* thr = app.add_subcommand("threshold", "bisection for the stability threshold in k");
  thr->add_option("--b", s.b, "integration constant b > 0")->check(CLI::PositiveNumber)->capture_default_str();
  thr->add_option("--a", s.a, "amplitude a")->capture_default_str();
  thr->add_option("--N", s.N, "truncation for the numeric model")->check(CLI::Range(8, 512));
  thr->add_option("--k-lo", tf.k_lo, "bracket start")->check(CLI::PositiveNumber)->capture_default_str();
  thr->add_option("--k-hi", tf.k_hi, "bracket end")->check(CLI::PositiveNumber)->capture_default_str();
  thr->add_option("--xi-factor", tf.xi_factor, "xi = factor * |a|")->capture_default_str();
  thr->add_option("--xi", tf.xi_fixed, "fixed xi (overrides --xi-factor)")->check(CLI::Range(-0.5, 0.5));
  thr->add_option("--width", tf.width, "final bracket width")->check(CLI::PositiveNumber)->capture_default_str();
  thr->add_option("--model", tf.model, "asymptotic | numeric | closed-form")
      ->check(CLI::IsMember({"asymptotic", "numeric", "closed-form"}))
      ->capture_default_str();

  ScanFlags cf;
  CLI::App* scan = app.add_subcommand("scan", "stability map over (k, a)");
  scan->add_option("--config", cf.config, "JSON scan configuration (see README)")->check(CLI::ExistingFile);
  scan->add_option("--b", s.b, "integration constant b > 0")->check(CLI::PositiveNumber);
  scan->add_option("--a", cf.a_list, "amplitudes")->expected(1, -1);
  scan->add_option("--k-min", cf.k_min, "k grid start")->check(CLI::PositiveNumber);
  scan->add_option("--k-max", cf.k_max, "k grid end")->check(CLI::PositiveNumber);
  scan->add_option("--k-count", cf.k_count, "k grid points")->check(CLI::PositiveNumber);
  scan->add_option("--xi-factor", cf.xi_factor, "xi = factor * |a|");
  scan->add_option("--xi", cf.xi_fixed, "fixed xi (overrides --xi-factor)")->check(CLI::Range(-0.5, 0.5));
  scan->add_option("--N", s.N, "Fourier truncation")->check(CLI::Range(8, 512));
  add_mode_flag(scan, s);
  scan->add_option("--out", s.out, "output file (.json for JSON, CSV otherwise)");
  scan->add_option("--threads", cf.threads, "worker threads (0: NOVIKOV_THREADS or hardware)");

  CLI::App* verify = app.add_subcommand("verify", "built-in identity checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*profile) return run_profile(s);
    if (*spectrum) return run_spectrum(s, sf);
    if (*cls) return run_classify(s);
    if (*thr) return run_threshold(s, tf);
    if (*scan) return run_scan_command(s, cf, *scan);
    if (*verify) return run_verify();
  } catch (const novikov::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
