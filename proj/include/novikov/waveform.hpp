#ifndef NOVIKOV_WAVEFORM_HPP
#define NOVIKOV_WAVEFORM_HPP

// Smooth small-amplitude periodic traveling waves of the Novikov equation
//
//   u_t - u_xxt = 3 u u_x u_xx - 4 u^2 u_x + u^2 u_xxx
//
// in the co-moving variable z = k (x - c t), where the profile w(z) is even
// and 2pi-periodic and solves
//
//   (c - w^2)^{3/2} (w - k^2 w'') = b.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "novikov/error.hpp"
#include "novikov/series.hpp"

namespace novikov {

/// Parameter triple identifying a wave: wavenumber k, integration constant b,
/// amplitude a (first cosine coefficient of the profile).
struct WaveParams {
  double k = 1.0;
  double b = 1.0;
  double a = 0.0;

  void validate() const {
    if (!(std::isfinite(k) && k > 0.0)) throw DomainError("wavenumber k must be positive and finite");
    if (!(std::isfinite(b) && b > 0.0)) throw DomainError("integration constant b must be positive and finite");
    if (!std::isfinite(a)) throw DomainError("amplitude a must be finite");
  }
};

struct Equilibrium {
  double w0 = 0.0;  // constant profile value
  double c0 = 0.0;  // bifurcation wavespeed
};

/// Second-order coefficients of the small-amplitude expansion
///   w = w0 + a cos z + a^2 (d1 + d2 cos 2z) + O(a^3),  c = c0 + a^2 c2 + O(a^4).
/// d3 is the constant that appears in the first critical basis function.
struct ExpansionCoefficients {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double c2 = 0.0;
};

/// Lower bound on the wavespeed for which smooth periodic orbits exist around
/// the potential minimum: c > 4 * 3^{-3/4} * sqrt(b).
inline double existence_speed_bound(double b) { return 4.0 * std::pow(3.0, -0.75) * std::sqrt(b); }

/// d^order/dz^order of cos(n z).
inline double cosine_derivative(int n, double z, int order) {
  const double nn = static_cast<double>(n);
  return std::pow(nn, order) * std::cos(nn * z + order * std::numbers::pi / 2.0);
}

/// Even 2pi-periodic profile w(z) = sum_{n=0}^{N} w_n cos(n z) with its speed.
struct PeriodicProfile {
  WaveParams params;
  double c = 0.0;
  std::vector<double> coeffs;

  int truncation() const { return static_cast<int>(coeffs.size()) - 1; }

  double value(double z, int order = 0) const {
    double sum = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) sum += coeffs[n] * cosine_derivative(static_cast<int>(n), z, order);
    return sum;
  }

  FourierSeries series() const { return FourierSeries::from_cosine(coeffs); }
};

/// Profile and its first three z-derivatives on the uniform grid z_j = 2 pi j / M.
struct ProfileSamples {
  std::vector<double> z, w, wz, wzz, wzzz;
};

inline ProfileSamples sample_profile(const PeriodicProfile& p, int M) {
  ProfileSamples s;
  s.z.resize(M);
  s.w.assign(M, 0.0);
  s.wz.assign(M, 0.0);
  s.wzz.assign(M, 0.0);
  s.wzzz.assign(M, 0.0);
  for (int j = 0; j < M; ++j) {
    const double z = 2.0 * std::numbers::pi * j / M;
    s.z[j] = z;
    for (std::size_t n = 0; n < p.coeffs.size(); ++n) {
      const double wn = p.coeffs[n];
      const double x = static_cast<double>(n) * z;
      const double nn = static_cast<double>(n);
      const double cs = std::cos(x), sn = std::sin(x);
      s.w[j] += wn * cs;
      s.wz[j] -= wn * nn * sn;
      s.wzz[j] -= wn * nn * nn * cs;
      s.wzzz[j] += wn * nn * nn * nn * sn;
    }
  }
  return s;
}

inline int fine_grid_size(const PeriodicProfile& p) { return std::max(8 * p.truncation(), 64); }

/// Closed-form equilibrium (w0, c0) at which cos(z) enters the kernel of the
/// linearized profile map.
inline Equilibrium equilibrium(double b, double k) {
  WaveParams{k, b, 0.0}.validate();
  const double r = 3.0 / (k * k + 1.0);
  Equilibrium e;
  e.w0 = std::pow(b, 0.25) * std::pow(r, -3.0 / 8.0);
  e.c0 = std::sqrt(b) * std::pow(r, -0.75) * (k * k + 4.0) / (k * k + 1.0);
  return e;
}

inline ExpansionCoefficients expansion_coefficients(double b, double k) {
  WaveParams{k, b, 0.0}.validate();
  const double k2 = k * k;
  const double common = std::pow(1.0 + k2, 5.0 / 8.0) / (std::pow(3.0, 5.0 / 8.0) * std::pow(b, 0.25) * k2);
  const Equilibrium eq = equilibrium(b, k);
  ExpansionCoefficients e;
  e.d1 = common * (5.0 * k2 * k2 - 20.0 * k2 - 16.0) / 48.0;
  e.d2 = common * (8.0 + 5.0 * k2) / 12.0;
  e.c2 = 5.0 / 72.0 * (k2 + 4.0) * (k2 + 4.0);
  e.d3 = 2.0 * e.d1 - 5.0 * eq.w0 / (72.0 * eq.c0) * (k2 + 4.0) * (k2 + 4.0);
  return e;
}

/// Second-order expansion of the wave; exact only up to O(a^3).
inline PeriodicProfile asymptotic_profile(const WaveParams& params, int truncation = 32) {
  params.validate();
  if (truncation < 2) throw DimensionError("asymptotic profile needs truncation >= 2");
  const Equilibrium eq = equilibrium(params.b, params.k);
  const ExpansionCoefficients ex = expansion_coefficients(params.b, params.k);
  const double a = params.a;
  PeriodicProfile p;
  p.params = params;
  p.c = eq.c0 + a * a * ex.c2;
  p.coeffs.assign(static_cast<std::size_t>(truncation) + 1, 0.0);
  p.coeffs[0] = eq.w0 + a * a * ex.d1;
  p.coeffs[1] = a;
  p.coeffs[2] = a * a * ex.d2;
  return p;
}

/// Pointwise smooth-wave conditions: w^2 < c and w - k^2 w'' > 0.
struct AdmissibilityReport {
  double min_speed_gap = 0.0;  // min (c - w^2)
  double min_momentum = 0.0;   // min (w - k^2 w'')
  bool admissible() const { return min_speed_gap > 0.0 && min_momentum > 0.0; }
};

inline AdmissibilityReport check_admissible(const PeriodicProfile& p, int M = 0) {
  const ProfileSamples s = sample_profile(p, M > 0 ? M : fine_grid_size(p));
  const double k2 = p.params.k * p.params.k;
  AdmissibilityReport r{INFINITY, INFINITY};
  for (std::size_t j = 0; j < s.w.size(); ++j) {
    r.min_speed_gap = std::min(r.min_speed_gap, p.c - s.w[j] * s.w[j]);
    r.min_momentum = std::min(r.min_momentum, s.w[j] - k2 * s.wzz[j]);
  }
  return r;
}

struct SolveOptions {
  int N = 32;
  double tol = 1e-12;
  int max_iterations = 50;
  double max_amplitude = 0.2;
};

/// Newton iteration on Fourier collocation for F(w; k, b, c) = 0 with the
/// amplitude pinned by w_1 = a. Unknowns are (w_0, w_2, ..., w_N, c); the
/// 4N collocation equations are solved in the least-squares sense.
inline PeriodicProfile solve_profile(const WaveParams& params, const SolveOptions& opts = {}) {
  params.validate();
  if (opts.N < 8) throw DimensionError("solve_profile needs truncation N >= 8");
  if (!(opts.tol > 0.0)) throw DomainError("solve_profile needs a positive tolerance");
  if (std::abs(params.a) > opts.max_amplitude)
    throw DomainError("amplitude |a| = " + std::to_string(std::abs(params.a)) + " exceeds the configured bound " +
                      std::to_string(opts.max_amplitude));

  const int N = opts.N;
  const double k2 = params.k * params.k;
  const double b = params.b;
  const Equilibrium eq = equilibrium(params.b, params.k);

  if (params.a == 0.0) {
    PeriodicProfile p;
    p.params = params;
    p.c = eq.c0;
    p.coeffs.assign(static_cast<std::size_t>(N) + 1, 0.0);
    p.coeffs[0] = eq.w0;
    return p;
  }

  PeriodicProfile p = asymptotic_profile(params, N);
  if (!(p.c > existence_speed_bound(b))) throw DomainError("initial wavespeed outside the existence window");

  const int M = 4 * N;
  Eigen::MatrixXd C(M, N + 1);  // cos(n z_j)
  for (int j = 0; j < M; ++j)
    for (int n = 0; n <= N; ++n) C(j, n) = std::cos(n * 2.0 * std::numbers::pi * j / M);

  Eigen::VectorXd coeffs = Eigen::Map<const Eigen::VectorXd>(p.coeffs.data(), N + 1);
  double c = p.c;
  double residual = INFINITY;

  for (int it = 0; it <= opts.max_iterations; ++it) {
    const Eigen::VectorXd w = C * coeffs;
    Eigen::VectorXd wzz(M);
    {
      Eigen::VectorXd d2 = coeffs;
      for (int n = 0; n <= N; ++n) d2(n) *= -static_cast<double>(n) * n;
      wzz = C * d2;
    }

    Eigen::VectorXd F(M);
    Eigen::MatrixXd J(M, N + 1);  // columns: w_0, w_2..w_N, c
    for (int j = 0; j < M; ++j) {
      const double gap = c - w(j) * w(j);
      if (!(gap > 0.0)) throw DomainExitError("Newton iterate left the region w^2 < c");
      const double root = std::sqrt(gap);
      const double mom = w(j) - k2 * wzz(j);
      F(j) = gap * root * mom - b;
      const double dw = -3.0 * w(j) * root * mom;
      int col = 0;
      for (int n = 0; n <= N; ++n) {
        if (n == 1) continue;
        J(j, col++) = (dw + gap * root * (1.0 + k2 * n * n)) * C(j, n);
      }
      J(j, N) = 1.5 * root * mom;
    }

    residual = F.cwiseAbs().maxCoeff();
    if (residual <= opts.tol) break;
    if (it == opts.max_iterations)
      throw ConvergenceError("profile Newton iteration did not converge (last residual " + std::to_string(residual) + ")",
                             residual, it);

    const Eigen::VectorXd step = J.colPivHouseholderQr().solve(-F);
    int col = 0;
    for (int n = 0; n <= N; ++n) {
      if (n == 1) continue;
      coeffs(n) += step(col++);
    }
    c += step(N);
    if (!std::isfinite(c) || !coeffs.allFinite())
      throw ConvergenceError("profile Newton iteration produced non-finite values", residual, it);
  }

  p.c = c;
  p.coeffs.assign(coeffs.data(), coeffs.data() + N + 1);
  p.coeffs[1] = params.a;

  const AdmissibilityReport adm = check_admissible(p);
  if (!adm.admissible()) throw DomainError("solved profile violates w^2 < c or w - k^2 w'' > 0");
  return p;
}

struct ProfileResidual {
  double integrated = 0.0;    // max |(c - w^2)^{3/2} (w - k^2 w'') - b|
  double differential = 0.0;  // max |-c w' + c k^2 w''' + 4 w^2 w' - 3 k^2 w w' w'' - k^2 w^2 w'''|
};

inline ProfileResidual profile_residual(const PeriodicProfile& p) {
  const ProfileSamples s = sample_profile(p, fine_grid_size(p));
  const double k2 = p.params.k * p.params.k;
  const double b = p.params.b;
  const double c = p.c;
  ProfileResidual r;
  for (std::size_t j = 0; j < s.w.size(); ++j) {
    const double w = s.w[j], w1 = s.wz[j], w2 = s.wzz[j], w3 = s.wzzz[j];
    const double gap = c - w * w;
    if (!(gap > 0.0)) throw DomainError("profile_residual: w^2 >= c on the sample grid");
    r.integrated = std::max(r.integrated, std::abs(gap * std::sqrt(gap) * (w - k2 * w2) - b));
    const double ode = -c * w1 + c * k2 * w3 + 4.0 * w * w * w1 - 3.0 * k2 * w * w1 * w2 - k2 * w * w * w3;
    r.differential = std::max(r.differential, std::abs(ode));
  }
  return r;
}

/// Effective potential V(phi; b, c) = b phi / (c sqrt(c - phi^2)) - phi^2 / 2.
inline double potential(double phi, double b, double c) {
  if (!(c > 0.0) || !(phi * phi < c)) throw DomainError("potential requires phi^2 < c");
  return b * phi / (c * std::sqrt(c - phi * phi)) - 0.5 * phi * phi;
}

inline double potential_derivative(double phi, double b, double c) {
  if (!(c > 0.0) || !(phi * phi < c)) throw DomainError("potential requires phi^2 < c");
  const double gap = c - phi * phi;
  return b / (gap * std::sqrt(gap)) - phi;
}

/// Max deviation from the first integral 1/2 k^2 w_z^2 + V(w) = E along the
/// profile, with E taken at the grid maximum of w.
inline double quadrature_check(const PeriodicProfile& p) {
  const ProfileSamples s = sample_profile(p, fine_grid_size(p));
  const double k2 = p.params.k * p.params.k;
  const auto energy = [&](std::size_t j) { return 0.5 * k2 * s.wz[j] * s.wz[j] + potential(s.w[j], p.params.b, p.c); };
  const std::size_t top = static_cast<std::size_t>(std::max_element(s.w.begin(), s.w.end()) - s.w.begin());
  const double E = energy(top);
  double worst = 0.0;
  for (std::size_t j = 0; j < s.w.size(); ++j) worst = std::max(worst, std::abs(energy(j) - E));
  return worst;
}

}  // namespace novikov

#endif  // NOVIKOV_WAVEFORM_HPP
