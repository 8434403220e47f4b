// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "novikov/novikov.hpp"

using namespace novikov;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, double time_limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string timing = " [" + format_double(std::round(secs * 1000.0) / 1000.0) + " s";
  if (time_limit_s > 0.0) {
    timing += " / limit " + format_double(time_limit_s) + " s";
    if (secs >= time_limit_s) {
      o.pass = false;
      o.detail += "; runtime limit exceeded";
    }
  }
  timing += "]";
  failures += !o.pass;
  std::printf("%s criterion %d: %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), timing.c_str());
  std::fflush(stdout);
}

void info(const std::string& line) { std::printf("INFO %s\n", line.c_str()); }

std::string f(double x) { return format_double(x); }

double min_distance(const std::vector<complex>& set, complex z) {
  double d = INFINITY;
  for (const complex& w : set) d = std::min(d, std::abs(w - z));
  return d;
}

}  // namespace

int main() {
  // 1. Hill eigenvalues at a = 0 against i Omega_{n,xi}. Relative error with
  //    the scale floored at 1 so the kernel eigenvalues at xi = 0 are measured absolutely.
  run(1, "constant-state exactness", 5.0, [] {
    constexpr double tol = 1e-12;
    double worst = 0.0;
    for (double k : {1.0, 2.0}) {
      const PeriodicProfile p = solve_profile({k, 1.0, 0.0});
      for (double xi : {0.0, 0.1, 0.49}) {
        const SpectrumSlice s = spectrum_slice(p, xi, 32);
        for (int n = -32; n <= 32; ++n) {
          const complex w = constant_state_eigenvalue(n, xi, 1.0, k);
          worst = std::max(worst, min_distance(s.eigenvalues, w) / std::max(1.0, std::abs(w)));
        }
      }
    }
    return Outcome{worst <= tol, "max relative error " + f(worst) + " (tol " + f(tol) + ")"};
  });

  // 2. Kernel of A_0 at a = 0: dimension 3, spanned by modes -1, 0, 1.
  run(2, "triple kernel", 0.0, [] {
    constexpr double rank_tol = 1e-10;
    constexpr double leak_tol = 1e-10;
    std::string detail;
    bool ok = true;
    for (double k : {1.0, 2.0}) {
      const BlochMatrix A = build_bloch_matrix(solve_profile({k, 1.0, 0.0}), 0.0, 32);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A.entries, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      int null = 0;
      for (int i = 0; i < sv.size(); ++i) null += sv(i) < rank_tol * sv(0);
      double leak = 0.0;
      for (int i = static_cast<int>(sv.size()) - 3; i < sv.size(); ++i)
        for (int n = -32; n <= 32; ++n)
          if (std::abs(n) > 1) leak = std::max(leak, std::abs(svd.matrixV()(A.index_of(n), i)));
      ok = ok && null == 3 && leak <= leak_tol;
      detail += "k=" + f(k) + ": nullity " + std::to_string(null) + ", off-mode weight " + f(leak) + "; ";
    }
    return Outcome{ok, detail + "(rank tol " + f(rank_tol) + ")"};
  });

  // 3. Sup-norm gap between solved and asymptotic profiles shrinks like a^3.
  run(3, "profile order of accuracy", 10.0, [] {
    constexpr double lo = 4.0, hi = 16.0;
    std::vector<double> gaps;
    for (double a : {0.08, 0.04, 0.02}) {
      const ProfileSamples x = sample_profile(solve_profile({1.0, 1.0, a}), 256);
      const ProfileSamples y = sample_profile(asymptotic_profile({1.0, 1.0, a}, 32), 256);
      double d = 0.0;
      for (std::size_t j = 0; j < x.w.size(); ++j) d = std::max(d, std::abs(x.w[j] - y.w[j]));
      gaps.push_back(d);
    }
    const double r1 = gaps[0] / gaps[1], r2 = gaps[1] / gaps[2];
    const bool ok = r1 >= lo && r1 <= hi && r2 >= lo && r2 <= hi;
    return Outcome{ok, "gaps " + f(gaps[0]) + ", " + f(gaps[1]) + ", " + f(gaps[2]) + "; ratios " + f(r1) + ", " +
                           f(r2) + " (window [4, 16])"};
  });

  // 4. Pipeline discriminant against its closed forms.
  run(4, "closed-form discriminant", 0.0, [] {
    constexpr double delta_tol = 1e-8;
    constexpr double lambda_tol = 1e-2;
    constexpr double a_fd = 1e-3;
    double worst_delta = 0.0, worst_lambda = 0.0;
    std::string lambdas;
    for (double b : {1.0, 2.0})
      for (double k : {1.0, 2.0}) {
        const DiscriminantLeadingTerms t = discriminant_leading_terms(b, k);
        const auto delta = [&](double a, double xi) {
          return discriminant(cubic_coefficients(reduced_matrix_asymptotic({k, b, a}, xi), xi));
        };
        for (double xi : {0.05, 0.1}) {
          const double closed = t.xi2_coefficient * xi * xi;
          worst_delta = std::max(worst_delta, std::abs(delta(0.0, xi) - closed) / closed);
          const double fit = (delta(a_fd, xi) - delta(0.0, xi)) / (a_fd * a_fd);
          worst_lambda = std::max(worst_lambda, std::abs(fit - t.lambda) / std::abs(t.lambda));
          if (b == 1.0 && xi == 0.05) lambdas += "k=" + f(k) + ": fit " + f(fit) + " vs " + f(t.lambda) + "; ";
        }
      }
    const bool ok = worst_delta <= delta_tol && worst_lambda <= lambda_tol;
    return Outcome{ok, "Delta(0,xi) max rel error " + f(worst_delta) + " (tol " + f(delta_tol) +
                           "), Lambda max rel error " + f(worst_lambda) + " (tol " + f(lambda_tol) + "); " + lambdas};
  });

  // 5. Threshold in k from the default reduced model.
  run(5, "threshold reproduction", 10.0, [] {
    constexpr double tol = 0.05;
    const double target = std::sqrt(3.0);
    const double kstar = threshold_locate(1.0, 0.02, XiRule::proportional(0.1), {1.5, 2.0});
    return Outcome{std::abs(kstar - target) <= tol, "k* = " + f(kstar) + " vs sqrt(3) +- " + f(tol)};
  });
  {
    ThresholdOptions o;
    o.model = DiscriminantModel::ClosedFormExpansion;
    info("threshold with the closed-form two-term discriminant model: k* = " +
         f(threshold_locate(1.0, 0.02, XiRule::proportional(0.1), {1.5, 2.0}, o)));
  }

  // 6. Eigenvalues in the origin ball stay on the imaginary axis for k = 1.
  const PeriodicProfile stable_wave = solve_profile({1.0, 1.0, 0.05});
  std::vector<SpectrumSlice> stable_slices;
  run(6, "stable side confinement", 60.0, [&] {
    constexpr double tol = 1e-8;
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(0.01 * i / 20.0);
    stable_slices = spectrum_sweep(stable_wave, grid, 32);
    double worst = 0.0;
    std::size_t counted = 0;
    for (const SpectrumSlice& s : stable_slices) {
      const auto ball = eigenvalues_in_ball(s.eigenvalues, origin_ball_radius(1.0, 1.0, s.xi));
      counted += ball.size();
      for (const complex& z : ball) worst = std::max(worst, std::abs(z.real()));
    }
    return Outcome{worst < tol && counted >= 3 * grid.size(),
                   std::to_string(counted) + " eigenvalues in the ball, max |Re| " + f(worst) + " (tol " + f(tol) + ")"};
  });

  // 7. Growth near the origin for k = 2 and agreement with the reduced cubic.
  SpectrumSlice unstable_slice;
  run(7, "unstable side growth", 30.0, [&] {
    constexpr double growth_floor = 1e-8;  // real parts below this are rounding noise
    constexpr double rel_tol = 0.2;
    const double xi = 0.01;
    const WaveParams wave{2.0, 1.0, 0.05};
    unstable_slice = spectrum_slice(solve_profile(wave), xi, 32);
    const double hill = origin_growth_rate(unstable_slice);
    const ModulationResult pred = classify(wave, xi);
    ClassifyOptions o;
    o.model = ReducedModel::Numeric;
    const ModulationResult pred_num = classify(wave, xi, o);
    const bool ok = hill > growth_floor && std::abs(hill - pred.growth_rate) <= rel_tol * pred.growth_rate;
    return Outcome{ok, "Hill max Re " + f(hill) + " (must exceed " + f(growth_floor) + "), predicted " +
                           f(pred.growth_rate) + " [" + to_string(pred.verdict) + ", Delta " + f(pred.delta) +
                           "], numeric reduction " + f(pred_num.growth_rate) + " [" + to_string(pred_num.verdict) +
                           "]"};
  });

  // 8. Each slice computed above: its 7 origin-nearest eigenvalues are closed
  //    under lambda -> -conj(lambda), and conj(lambda) lies in the -xi slice.
  run(8, "symmetry suite", 0.0, [&] {
    constexpr double tol = 1e-8;
    std::vector<std::pair<const PeriodicProfile*, SpectrumSlice>> slices;
    for (const SpectrumSlice& s : stable_slices) slices.emplace_back(&stable_wave, s);
    const PeriodicProfile wave2 = solve_profile({2.0, 1.0, 0.05});
    if (!unstable_slice.eigenvalues.empty()) slices.emplace_back(&wave2, unstable_slice);
    double worst = 0.0;
    for (const auto& [p, s] : slices) {
      const SpectrumSlice mirror = spectrum_slice(*p, -s.xi, 32);
      for (const complex& z : nearest_to_origin(s.eigenvalues, 7)) {
        worst = std::max(worst, min_distance(s.eigenvalues, -std::conj(z)));
        worst = std::max(worst, min_distance(mirror.eigenvalues, std::conj(z)));
      }
    }
    return Outcome{worst <= tol && !slices.empty(),
                   std::to_string(slices.size()) + " slices, max pairing error " + f(worst) + " (tol " + f(tol) + ")"};
  });

  // 9. a = 0 reduced roots against the xi-derivatives of i Omega_{n,xi} at xi = 0.
  run(9, "first-order dispersion identity", 0.0, [] {
    constexpr double closed_tol = 1e-12;
    constexpr double numeric_tol = 1e-10;
    double worst_closed = 0.0, worst_numeric = 0.0;
    for (double k : {0.5, 1.0, 2.0, 3.0}) {
      const Equilibrium eq = equilibrium(1.0, k);
      const ReducedConstants r = reduced_constants(1.0, k);
      const double k2 = k * k;
      // Closed form: slopes 2k^3 (c0 - w0^2)/(k^2+1) for n = +-1 and -k^3 (c0 - w0^2) for n = 0,
      // rewritten through c0 - 4 w0^2 = -3 k^2 w0^2 / (k^2+1).
      const double pm = 6.0 * k * k2 * eq.w0 * eq.w0 / ((k2 + 1.0) * (k2 + 1.0));
      const double zero = -3.0 * k * k2 * eq.w0 * eq.w0 / (k2 + 1.0);
      worst_closed = std::max(worst_closed, std::abs(r.alpha + 3.0 * k2 * eq.w0 * eq.w0 / (k2 + 1.0)) / std::abs(r.alpha));
      worst_closed = std::max(worst_closed, std::abs(-2.0 * k * r.alpha * r.m1 - pm) / pm);
      worst_closed = std::max(worst_closed, std::abs(k * r.alpha - zero) / std::abs(zero));
      // Numeric: pencil roots / (i xi), extrapolated to xi -> 0, against
      // Richardson central differences of Omega_{n,xi}.
      const auto slopes = [&](double xi) {
        std::vector<double> out;
        for (const complex& z : pencil_eigenvalues(reduced_matrix_asymptotic({k, 1.0, 0.0}, xi)))
          out.push_back(z.imag() / xi);
        std::sort(out.begin(), out.end());
        return out;
      };
      const std::vector<double> s1 = slopes(1e-3), s2 = slopes(5e-4);
      std::vector<double> fd;
      for (int n : {-1, 0, 1}) {
        const auto d = [&](double h) {
          return (constant_state_frequency(n, h, 1.0, k) - constant_state_frequency(n, -h, 1.0, k)) / (2.0 * h);
        };
        fd.push_back((4.0 * d(1e-4) - d(2e-4)) / 3.0);
      }
      std::sort(fd.begin(), fd.end());
      for (int j = 0; j < 3; ++j) {
        const double extrapolated = 2.0 * s2[j] - s1[j];
        worst_numeric = std::max(worst_numeric, std::abs(extrapolated - fd[j]) / std::abs(pm));
      }
    }
    const bool ok = worst_closed <= closed_tol && worst_numeric <= numeric_tol;
    return Outcome{ok, "closed-form rel error " + f(worst_closed) + " (tol " + f(closed_tol) + "), numeric rel error " +
                           f(worst_numeric) + " (tol " + f(numeric_tol) + ")"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
