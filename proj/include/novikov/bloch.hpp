#ifndef NOVIKOV_BLOCH_HPP
#define NOVIKOV_BLOCH_HPP

// Fourier-Floquet-Hill discretization of the Bloch operators
//
//   A_xi[w] = k (1 - k^2 (d_z + i xi)^2)^{-1} L_xi[w],   L_xi = e^{-i xi z} L[w] e^{i xi z},
//
// where L[w] is the linearization of the Novikov equation about the wave w in
// the co-moving frame. Matrices act on the modes e^{inz}, n = -N..N, stored at
// row/column n + N.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "novikov/error.hpp"
#include "novikov/parallel.hpp"
#include "novikov/series.hpp"
#include "novikov/waveform.hpp"

namespace novikov {

/// Periodic coefficients of L[w] = f0 + f1 D + f2 D^2 + f3 D^3 with D = d_z:
///   f0 = -8 w w_z + 3k^2 w_z w_zz + 2k^2 w w_zzz
///   f1 = c - 4 w^2 + 3k^2 w w_zz
///   f2 = 3k^2 w w_z
///   f3 = -c k^2 + k^2 w^2
struct LinearizationCoefficients {
  FourierSeries f0, f1, f2, f3;

  const FourierSeries& operator[](int order) const {
    switch (order) {
      case 0: return f0;
      case 1: return f1;
      case 2: return f2;
      default: return f3;
    }
  }
};

inline LinearizationCoefficients linearization_coefficients(const PeriodicProfile& p) {
  const double k2 = p.params.k * p.params.k;
  const FourierSeries w = p.series();
  const FourierSeries wz = w.derivative(1);
  const FourierSeries wzz = w.derivative(2);
  const FourierSeries wzzz = w.derivative(3);
  const FourierSeries ww = w * w;
  LinearizationCoefficients L;
  L.f0 = -8.0 * (w * wz) + (3.0 * k2) * (wz * wzz) + (2.0 * k2) * (w * wzzz);
  L.f1 = FourierSeries::constant(p.c) - 4.0 * ww + (3.0 * k2) * (w * wzz);
  L.f2 = (3.0 * k2) * (w * wz);
  L.f3 = FourierSeries::constant(-p.c * k2) + k2 * ww;
  return L;
}

/// Symbol k / (1 + k^2 (n + xi)^2) of k (1 - k^2 (d_z + i xi)^2)^{-1} on e^{inz}.
inline double inverse_operator_symbol(double k, int n, double xi) {
  const double s = n + xi;
  return k / (1.0 + k * k * s * s);
}

inline void check_truncation(int N) {
  if (N < 1) throw DimensionError("Hill truncation N must be at least 1, got " + std::to_string(N));
}

/// Fourier matrix of L_xi[w]: entry (m, n) = sum_j f_j[m - n] (i (n + xi))^j.
inline Eigen::MatrixXcd build_L_matrix(const PeriodicProfile& p, double xi, int N) {
  check_truncation(N);
  if (p.coeffs.empty()) throw DimensionError("profile has no Fourier coefficients");
  const LinearizationCoefficients f = linearization_coefficients(p);
  const int size = 2 * N + 1;
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(size, size);
  for (int n = -N; n <= N; ++n) {
    const complex D{0.0, n + xi};
    complex Dj{1.0, 0.0};
    for (int j = 0; j <= 3; ++j) {
      const FourierSeries& fj = f[j];
      for (int m = -N; m <= N; ++m) L(m + N, n + N) += fj[m - n] * Dj;
      Dj *= D;
    }
  }
  return L;
}

/// Dense (2N+1)x(2N+1) matrix of the Bloch operator A_xi[w].
struct BlochMatrix {
  double xi = 0.0;
  int N = 0;
  Eigen::MatrixXcd entries;

  int index_of(int n) const { return n + N; }
  int mode_at(int index) const { return index - N; }
};

inline BlochMatrix build_bloch_matrix(const PeriodicProfile& p, double xi, int N) {
  BlochMatrix A{xi, N, build_L_matrix(p, xi, N)};
  for (int m = -N; m <= N; ++m) A.entries.row(m + N) *= inverse_operator_symbol(p.params.k, m, xi);
  return A;
}

/// Real frequency Omega_{n,xi} of the constant state: A_xi[w0] e^{inz} = i Omega e^{inz}.
inline double constant_state_frequency(int n, double xi, double b, double k) {
  const Equilibrium eq = equilibrium(b, k);
  const double s = n + xi;
  return s * (s * s - 1.0) * k * k * k * (eq.c0 - eq.w0 * eq.w0) / (1.0 + k * k * s * s);
}

inline complex constant_state_eigenvalue(int n, double xi, double b, double k) {
  return {0.0, constant_state_frequency(n, xi, b, k)};
}

/// Lexicographic (Im, Re) order used for every eigenvalue list.
inline bool spectral_less(const complex& x, const complex& y) {
  if (x.imag() != y.imag()) return x.imag() < y.imag();
  return x.real() < y.real();
}

struct SpectrumSlice {
  double xi = 0.0;
  std::vector<complex> eigenvalues;
};

inline std::vector<complex> matrix_eigenvalues(const Eigen::MatrixXcd& A) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(A, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("complex eigensolver failed (matrix Frobenius norm " + std::to_string(A.norm()) + ")",
                         A.norm());
  const Eigen::VectorXcd& ev = solver.eigenvalues();
  std::vector<complex> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), spectral_less);
  return out;
}

inline SpectrumSlice spectrum_slice(const PeriodicProfile& p, double xi, int N = 32) {
  return {xi, matrix_eigenvalues(build_bloch_matrix(p, xi, N).entries)};
}

/// The `count` eigenvalues of smallest modulus, ordered by modulus (ties by (Im, Re)).
inline std::vector<complex> nearest_to_origin(std::span<const complex> eigenvalues, std::size_t count = 3) {
  std::vector<complex> v(eigenvalues.begin(), eigenvalues.end());
  std::sort(v.begin(), v.end(), [](const complex& x, const complex& y) {
    const double ax = std::abs(x), ay = std::abs(y);
    return ax != ay ? ax < ay : spectral_less(x, y);
  });
  v.resize(std::min(count, v.size()));
  return v;
}

/// Default radius of the spectral ball around the origin used for modulational
/// diagnostics: half of the 4th-smallest |Omega_{n,xi}|.
inline double origin_ball_radius(double b, double k, double xi) {
  std::vector<double> mags;
  for (int n = -8; n <= 8; ++n) mags.push_back(std::abs(constant_state_frequency(n, xi, b, k)));
  std::sort(mags.begin(), mags.end());
  return 0.5 * mags[3];
}

inline std::vector<complex> eigenvalues_in_ball(std::span<const complex> eigenvalues, double radius) {
  std::vector<complex> out;
  for (const complex& z : eigenvalues)
    if (std::abs(z) < radius) out.push_back(z);
  return out;
}

/// Largest real part among the `count` origin-nearest eigenvalues.
inline double origin_growth_rate(const SpectrumSlice& s, std::size_t count = 3) {
  double g = -INFINITY;
  for (const complex& z : nearest_to_origin(s.eigenvalues, count)) g = std::max(g, z.real());
  return g;
}

inline std::vector<SpectrumSlice> spectrum_sweep(const PeriodicProfile& p, std::span<const double> xi_grid, int N = 32,
                                                 int threads = 0) {
  for (double xi : xi_grid)
    if (!(xi >= -0.5 && xi < 0.5)) throw DomainError("Bloch frequency " + std::to_string(xi) + " outside [-1/2, 1/2)");
  return ordered_parallel_map(
      xi_grid.size(), [&](std::size_t i) { return spectrum_slice(p, xi_grid[i], N); }, threads);
}

/// Branch labels for curve tracing across a sweep. Labels of slice 0 are the
/// sorted positions; later slices inherit the label of the nearest unused
/// eigenvalue of the previous slice. A step is rejected (labels restart from
/// sorted positions) when the minimal eigenvalue gap drops below half of the
/// previous slice's.
inline std::vector<std::vector<int>> assign_branches(std::span<const SpectrumSlice> slices) {
  const auto min_gap = [](const std::vector<complex>& ev) {
    double g = INFINITY;
    for (std::size_t i = 0; i < ev.size(); ++i)
      for (std::size_t j = i + 1; j < ev.size(); ++j) g = std::min(g, std::abs(ev[i] - ev[j]));
    return g;
  };
  std::vector<std::vector<int>> labels;
  double prev_gap = INFINITY;
  for (std::size_t s = 0; s < slices.size(); ++s) {
    const auto& ev = slices[s].eigenvalues;
    std::vector<int> lab(ev.size());
    const double gap = min_gap(ev);
    const bool restart = s == 0 || ev.size() != slices[s - 1].eigenvalues.size() || gap < 0.5 * prev_gap;
    if (restart) {
      for (std::size_t i = 0; i < ev.size(); ++i) lab[i] = static_cast<int>(i);
    } else {
      const auto& prev = slices[s - 1].eigenvalues;
      std::vector<bool> used(prev.size(), false);
      for (std::size_t i = 0; i < ev.size(); ++i) {
        std::size_t best = 0;
        double best_d = INFINITY;
        for (std::size_t j = 0; j < prev.size(); ++j) {
          if (used[j]) continue;
          const double d = std::abs(ev[i] - prev[j]);
          if (d < best_d) best_d = d, best = j;
        }
        used[best] = true;
        lab[i] = labels.back()[best];
      }
    }
    prev_gap = gap;
    labels.push_back(std::move(lab));
  }
  return labels;
}

/// Ordering of the constant-state frequencies n in [-4, 4] that rules out
/// eigenvalue collisions away from the origin when k^2 < 3:
///   O_{-4} < O_{-3} < O_{-2} < O_0 < 0 < O_{-1} < O_1 < O_2 < O_3 < O_4.
struct CollisionReport {
  std::vector<std::pair<int, double>> chain;  // (n, Omega_{n,xi}) in the expected order
  std::vector<std::string> violations;
  bool advisory = false;  // k^2 >= 3: the ordering is not guaranteed

  bool strict() const { return violations.empty(); }
};

inline CollisionReport collision_check(double b, double k, double xi) {
  static constexpr int kBelow[] = {-4, -3, -2, 0};
  static constexpr int kAbove[] = {-1, 1, 2, 3, 4};
  CollisionReport r;
  r.advisory = k * k >= 3.0;
  for (int n : kBelow) r.chain.emplace_back(n, constant_state_frequency(n, xi, b, k));
  for (int n : kAbove) r.chain.emplace_back(n, constant_state_frequency(n, xi, b, k));

  const std::size_t zero_slot = std::size(kBelow);
  for (std::size_t i = 0; i + 1 < r.chain.size(); ++i) {
    const auto [n0, o0] = r.chain[i];
    const auto [n1, o1] = r.chain[i + 1];
    if (i + 1 == zero_slot) {
      if (!(o0 < 0.0)) r.violations.push_back("Omega_" + std::to_string(n0) + " < 0 fails");
      if (!(0.0 < o1)) r.violations.push_back("0 < Omega_" + std::to_string(n1) + " fails");
    } else if (!(o0 < o1)) {
      r.violations.push_back("Omega_" + std::to_string(n0) + " < Omega_" + std::to_string(n1) + " fails");
    }
  }
  return r;
}

}  // namespace novikov

#endif  // NOVIKOV_BLOCH_HPP
