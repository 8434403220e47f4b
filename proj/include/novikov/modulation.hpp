#ifndef NOVIKOV_MODULATION_HPP
#define NOVIKOV_MODULATION_HPP

// Three-dimensional reduction of the Bloch eigenvalue problem near
// (lambda, xi) = (0, 0). The critical eigenvalues are the roots of
// det(S - lambda G) = 0 for the 3x3 pencil obtained by projecting A_xi[w] on a
// basis continuing span{cos z, sin z, 1}. With lambda = i xi X the determinant
// becomes i xi^3 Q(X), Q(X) = q3 X^3 - q2 X^2 - q1 X + q0, and the sign of the
// discriminant of Q separates three real roots (modulational stability) from a
// complex-conjugate pair (modulational instability).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "novikov/bloch.hpp"
#include "novikov/error.hpp"
#include "novikov/series.hpp"
#include "novikov/waveform.hpp"

namespace novikov {

struct CriticalBasis {
  FourierSeries phi1;  // even, cos z + O(a)
  FourierSeries phi2;  // odd,  sin z + O(a)
  FourierSeries phi3;  // even, 1 + O(a^2)

  const FourierSeries& operator[](int i) const { return i == 0 ? phi1 : (i == 1 ? phi2 : phi3); }
};

/// O(a)-accurate basis of the generalized kernel of A_0[w]:
///   phi1 = cos z + a (d3 + 2 d2 cos 2z),  phi2 = sin z + 2 a d2 sin 2z,  phi3 = 1.
inline CriticalBasis critical_basis(const WaveParams& params) {
  params.validate();
  const ExpansionCoefficients ex = expansion_coefficients(params.b, params.k);
  const double a = params.a;
  const std::vector<double> c1{a * ex.d3, 1.0, 2.0 * a * ex.d2};
  const std::vector<double> s2{0.0, 1.0, 2.0 * a * ex.d2};
  return {FourierSeries::from_cosine(c1), FourierSeries::from_sine(s2), FourierSeries::constant(1.0)};
}

/// Basis built from its defining relations on numerically solved profiles:
///   phi1 = (2b/c0)(c_b w_a - c_a w_b),  phi2 = -w_z / a,  phi3 = w_b / (d w0/db).
/// Parameter derivatives use fourth-order central differences with relative
/// step `step`. Spans the generalized kernel of A_0[w] to differencing accuracy.
inline CriticalBasis critical_basis_numeric(const WaveParams& params, const SolveOptions& opts = {},
                                            double step = 1e-3) {
  params.validate();
  const double a = params.a;
  const double b = params.b;
  const Equilibrium eq = equilibrium(b, params.k);

  struct Solved {
    std::vector<double> w;
    double c;
  };
  const auto solve = [&](double aa, double bb) {
    const PeriodicProfile p = solve_profile({params.k, bb, aa}, opts);
    return Solved{p.coeffs, p.c};
  };
  const auto derivative = [&](auto&& at) {
    const Solved p1 = at(1.0), m1 = at(-1.0), p2 = at(2.0), m2 = at(-2.0);
    Solved d{std::vector<double>(p1.w.size()), 0.0};
    const auto stencil = [&](double fp1, double fm1, double fp2, double fm2) {
      return (8.0 * (fp1 - fm1) - (fp2 - fm2)) / 12.0;
    };
    for (std::size_t n = 0; n < d.w.size(); ++n) d.w[n] = stencil(p1.w[n], m1.w[n], p2.w[n], m2.w[n]);
    d.c = stencil(p1.c, m1.c, p2.c, m2.c);
    return d;
  };

  const double ha = step;
  const double hb = step * b;
  Solved da = derivative([&](double s) { return solve(a + s * ha, b); });
  Solved db = derivative([&](double s) { return solve(a, b + s * hb); });
  for (auto& x : da.w) x /= ha;
  da.c /= ha;
  for (auto& x : db.w) x /= hb;
  db.c /= hb;

  std::vector<double> c1(da.w.size()), c3(db.w.size()), s2(da.w.size(), 0.0);
  const double scale1 = 2.0 * b / eq.c0;
  const double scale3 = 4.0 * b / eq.w0;  // 1 / (d w0 / db)
  for (std::size_t n = 0; n < c1.size(); ++n) {
    c1[n] = scale1 * (db.c * da.w[n] - da.c * db.w[n]);
    c3[n] = scale3 * db.w[n];
  }
  if (a == 0.0) {
    s2[1] = 1.0;
  } else {
    const PeriodicProfile p = solve_profile(params, opts);
    for (std::size_t n = 1; n < s2.size(); ++n) s2[n] = static_cast<double>(n) * p.coeffs[n] / a;
  }
  return {FourierSeries::from_cosine(c1), FourierSeries::from_sine(s2), FourierSeries::from_cosine(c3)};
}

enum class Provenance { Asymptotic, Numeric };

/// Pencil M(lambda) = S - lambda G with S_ij = <A phi_j, phi_i>/<phi_i, phi_i>
/// and G_ij = <phi_j, phi_i>/<phi_i, phi_i>.
struct ReducedMatrix {
  Eigen::Matrix3cd S = Eigen::Matrix3cd::Zero();
  Eigen::Matrix3cd G = Eigen::Matrix3cd::Identity();
  Provenance provenance = Provenance::Asymptotic;

  Eigen::Matrix3cd at(complex lambda) const { return S - lambda * G; }
};

/// Scalars entering the asymptotic reduced matrix.
struct ReducedConstants {
  double alpha = 0.0;   // c0 - 4 w0^2
  double y1 = 0.0;      // -2k^2 / (k^2+1)^2
  double m1 = 0.0;      // 1 / (k^2+1)
  double gamma1 = 0.0;  // 2k alpha d3 + k y1 w0 (2k^2+8) - k w0 m1 (3k^2+8)
  double gamma2 = 0.0;  // k d3 alpha - k w0 (3k^2+8) / 2
  double kappa = 0.0;   // k w0 m1 (2k^2+8), coefficient of a in entry (2,3)
};

inline ReducedConstants reduced_constants(double b, double k) {
  const Equilibrium eq = equilibrium(b, k);
  const ExpansionCoefficients ex = expansion_coefficients(b, k);
  const double k2 = k * k;
  ReducedConstants r;
  r.alpha = eq.c0 - 4.0 * eq.w0 * eq.w0;
  r.y1 = -2.0 * k2 / ((k2 + 1.0) * (k2 + 1.0));
  r.m1 = 1.0 / (k2 + 1.0);
  r.gamma1 = 2.0 * k * r.alpha * ex.d3 + k * r.y1 * eq.w0 * (2.0 * k2 + 8.0) - k * eq.w0 * r.m1 * (3.0 * k2 + 8.0);
  r.gamma2 = k * ex.d3 * r.alpha - k * eq.w0 * (3.0 * k2 + 8.0) / 2.0;
  r.kappa = k * eq.w0 * r.m1 * (2.0 * k2 + 8.0);
  return r;
}

/// Closed-form reduced matrix, accurate to O(a^2 + a xi^2 + xi^3), with G = I.
inline ReducedMatrix reduced_matrix_asymptotic(const WaveParams& params, double xi) {
  params.validate();
  const ReducedConstants r = reduced_constants(params.b, params.k);
  const double k = params.k;
  const double a = params.a;
  const complex ixi{0.0, xi};

  ReducedMatrix M;
  M.provenance = Provenance::Asymptotic;
  M.S(0, 0) = ixi * (-2.0 * k * r.alpha * r.m1);
  M.S(1, 1) = ixi * (-2.0 * k * r.alpha * r.m1);
  M.S(2, 2) = ixi * (k * r.alpha);
  M.S(1, 2) = a * r.kappa;
  M.S(0, 2) = a * ixi * r.gamma1;
  M.S(2, 0) = a * ixi * r.gamma2;
  M.S(0, 1) = xi * xi * k * r.alpha * (-3.0 * r.m1 + 2.0 * r.y1);
  M.S(1, 0) = xi * xi * k * r.alpha * (3.0 * r.m1 - 2.0 * r.y1);
  return M;
}

enum class BasisKind { ParameterDerivative, Asymptotic };

inline Eigen::VectorXcd hill_vector(const FourierSeries& f, int N) {
  Eigen::VectorXcd v(2 * N + 1);
  for (int n = -N; n <= N; ++n) v(n + N) = f[n];
  return v;
}

/// Galerkin projection of the Hill matrix A_xi[w] onto the given basis.
inline ReducedMatrix reduced_matrix_numeric(const PeriodicProfile& p, double xi, int N, const CriticalBasis& basis) {
  check_truncation(N);
  if (N < 2) throw DimensionError("reduced_matrix_numeric needs Hill truncation N >= 2");
  const Eigen::MatrixXcd A = build_bloch_matrix(p, xi, N).entries;
  std::array<Eigen::VectorXcd, 3> v;
  for (int i = 0; i < 3; ++i) v[i] = hill_vector(basis[i], N);
  ReducedMatrix M;
  M.provenance = Provenance::Numeric;
  for (int i = 0; i < 3; ++i) {
    const double norm = v[i].squaredNorm();
    for (int j = 0; j < 3; ++j) {
      M.S(i, j) = v[i].dot(A * v[j]) / norm;
      M.G(i, j) = v[i].dot(v[j]) / norm;
    }
  }
  return M;
}

inline ReducedMatrix reduced_matrix_numeric(const PeriodicProfile& p, double xi, int N = 32,
                                            BasisKind kind = BasisKind::ParameterDerivative) {
  if (kind == BasisKind::Asymptotic) return reduced_matrix_numeric(p, xi, N, critical_basis(p.params));
  SolveOptions opts;
  opts.N = std::max(p.truncation(), 8);
  return reduced_matrix_numeric(p, xi, N, critical_basis_numeric(p.params, opts));
}

/// Generalized eigenvalues of the pencil (S, G), sorted by (Im, Re).
inline std::vector<complex> pencil_eigenvalues(const ReducedMatrix& M) {
  const Eigen::Matrix3cd K = M.G.partialPivLu().solve(M.S);
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(K, false);
  if (solver.info() != Eigen::Success) throw NumericalError("3x3 pencil eigensolve failed", K.norm());
  std::vector<complex> out(solver.eigenvalues().data(), solver.eigenvalues().data() + 3);
  std::sort(out.begin(), out.end(), spectral_less);
  return out;
}

/// Coefficients p_0..p_3 of det(S - lambda G) = sum p_j lambda^j.
inline std::array<complex, 4> determinant_polynomial(const ReducedMatrix& M) {
  using Poly = std::array<complex, 4>;
  const auto entry = [&](int i, int j) { return Poly{M.S(i, j), -M.G(i, j), 0.0, 0.0}; };
  const auto mul = [](const Poly& x, const Poly& y) {
    Poly z{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; i + j < 4; ++j) z[i + j] += x[i] * y[j];
    return z;
  };
  static constexpr int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  static constexpr double signs[6] = {1, 1, 1, -1, -1, -1};
  Poly det{};
  for (int s = 0; s < 6; ++s) {
    const Poly term = mul(mul(entry(0, perms[s][0]), entry(1, perms[s][1])), entry(2, perms[s][2]));
    for (int j = 0; j < 4; ++j) det[j] += signs[s] * term[j];
  }
  return det;
}

/// Real coefficients of Q(X) = q3 X^3 - q2 X^2 - q1 X + q0 (scaled == true), or
/// at xi = 0 the real b_j of det = i b0 + b1 lambda + i b2 lambda^2 + b3 lambda^3
/// stored in q0..q3 (scaled == false).
struct CubicCoefficients {
  double q0 = 0.0, q1 = 0.0, q2 = 0.0, q3 = 0.0;
  bool scaled = true;
  double imaginary_residue = 0.0;

  double scale() const { return std::max({std::abs(q0), std::abs(q1), std::abs(q2), std::abs(q3)}); }
};

inline CubicCoefficients cubic_coefficients(const ReducedMatrix& M, double xi, double reality_tol = 1e-6) {
  const std::array<complex, 4> p = determinant_polynomial(M);
  const complex I{0.0, 1.0};
  std::array<complex, 4> q;
  CubicCoefficients out;
  if (xi == 0.0) {
    q = {-I * p[0], p[1], -I * p[2], p[3]};
    out.scaled = false;
  } else {
    // lambda = i xi X and division by i xi^3.
    q = {-I * p[0] / (xi * xi * xi), -p[1] / (xi * xi), -I * p[2] / xi, -p[3]};
  }
  double scale = 0.0, residue = 0.0;
  for (const complex& z : q) {
    scale = std::max(scale, std::abs(z));
    residue = std::max(residue, std::abs(z.imag()));
  }
  out.q0 = q[0].real();
  out.q1 = q[1].real();
  out.q2 = q[2].real();
  out.q3 = q[3].real();
  out.imaginary_residue = residue;
  if (residue > reality_tol * scale)
    throw ConsistencyError("cubic coefficients are not real (imaginary residue " + std::to_string(residue) +
                           ", scale " + std::to_string(scale) + ")");
  return out;
}

/// Discriminant of Q(X) = q3 X^3 - q2 X^2 - q1 X + q0.
inline double discriminant(double q0, double q1, double q2, double q3) {
  if (q3 == 0.0) throw DegenerateError("leading cubic coefficient q3 vanishes");
  return 18.0 * q3 * q2 * q1 * q0 + q2 * q2 * q1 * q1 + 4.0 * q2 * q2 * q2 * q0 + 4.0 * q3 * q1 * q1 * q1 -
         27.0 * q3 * q3 * q0 * q0;
}

inline double discriminant(const CubicCoefficients& q) { return discriminant(q.q0, q.q1, q.q2, q.q3); }

/// Roots of Q via the eigenvalues of its companion matrix, sorted by (Im, Re).
inline std::array<complex, 3> cubic_roots(const CubicCoefficients& q) {
  if (q.q3 == 0.0) throw DegenerateError("leading cubic coefficient q3 vanishes");
  // Monic form X^3 + c2 X^2 + c1 X + c0.
  const double c2 = -q.q2 / q.q3, c1 = -q.q1 / q.q3, c0 = q.q0 / q.q3;
  Eigen::Matrix3d companion;
  companion << 0.0, 0.0, -c0, 1.0, 0.0, -c1, 0.0, 1.0, -c2;
  Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("companion eigensolve failed", companion.norm());
  std::array<complex, 3> r;
  for (int i = 0; i < 3; ++i) r[i] = solver.eigenvalues()(i);
  std::sort(r.begin(), r.end(), spectral_less);
  return r;
}

inline complex evaluate_cubic(const CubicCoefficients& q, complex X) {
  return ((q.q3 * X - q.q2) * X - q.q1) * X + q.q0;
}

/// Closed forms for the expansion Delta(a, xi) = Delta(0, xi) + Lambda a^2 + ...:
///   Delta(0, xi) = xi2_coefficient * xi^2.
struct DiscriminantLeadingTerms {
  double xi2_coefficient = 0.0;
  double lambda = 0.0;
};

inline DiscriminantLeadingTerms discriminant_leading_terms(double b, double k) {
  WaveParams{k, b, 0.0}.validate();
  const double k2 = k * k;
  DiscriminantLeadingTerms t;
  t.xi2_coefficient = 12.0 * std::sqrt(3.0) * std::pow(b, 3) * std::pow(k, 18) * std::pow(k2 + 3.0, 4) *
                      std::pow(7.0 * k2 + 3.0, 2) / std::pow(k2 + 1.0, 9.5);
  t.lambda = 4.0 * std::pow(b, 2.5) * std::pow(k, 14) * std::pow(k2 + 3.0, 3) * std::pow(k2 + 4.0, 2) *
             (7.0 * k2 + 3.0) / (std::pow(3.0, 0.75) * std::pow(k2 + 1.0, 29.0 / 4.0)) * (3.0 - k2);
  return t;
}

/// Two-term model Delta(0, xi) + Lambda a^2 built from the closed forms.
inline double expansion_discriminant(double b, double k, double a, double xi) {
  const DiscriminantLeadingTerms t = discriminant_leading_terms(b, k);
  return t.xi2_coefficient * xi * xi + t.lambda * a * a;
}

enum class Verdict { Stable, Unstable, Critical };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "Stable";
    case Verdict::Unstable: return "Unstable";
    default: return "Critical";
  }
}

struct ModulationResult {
  CubicCoefficients q;
  double delta = 0.0;
  std::array<complex, 3> roots{};  // roots X_j of Q; lambda_j = i xi X_j
  Verdict verdict = Verdict::Critical;
  double growth_rate = 0.0;  // max Re lambda_j when Unstable, else 0
  bool in_trust_region = true;
};

/// Sign rule with a relative indeterminate band |Delta| <= band * scale^4.
inline Verdict verdict_from_discriminant(double delta, const CubicCoefficients& q, double band = 1e-12) {
  const double s = q.scale();
  if (std::abs(delta) <= band * s * s * s * s) return Verdict::Critical;
  return delta > 0.0 ? Verdict::Stable : Verdict::Unstable;
}

/// Cubic, discriminant, roots and verdict of a reduced matrix at xi != 0.
inline ModulationResult analyze_reduced(const ReducedMatrix& M, double xi, double band = 1e-12) {
  if (xi == 0.0) throw DomainError("modulational analysis needs xi != 0");
  ModulationResult r;
  r.q = cubic_coefficients(M, xi);
  r.delta = discriminant(r.q);
  r.roots = cubic_roots(r.q);
  r.verdict = verdict_from_discriminant(r.delta, r.q, band);
  if (r.verdict == Verdict::Unstable) {
    for (const complex& X : r.roots) r.growth_rate = std::max(r.growth_rate, (complex{0.0, xi} * X).real());
  }
  return r;
}

enum class ReducedModel { Asymptotic, Numeric };

struct ClassifyOptions {
  ReducedModel model = ReducedModel::Asymptotic;
  int N = 32;  // profile and Hill truncation for the numeric model
  double critical_band = 1e-12;
  double max_amplitude = 0.1;  // trust region |a| <= max_amplitude, |xi| <= |a|
};

inline ModulationResult classify(const WaveParams& params, double xi, const ClassifyOptions& opts = {}) {
  params.validate();
  ReducedMatrix M;
  if (opts.model == ReducedModel::Asymptotic) {
    M = reduced_matrix_asymptotic(params, xi);
  } else {
    SolveOptions so;
    so.N = opts.N;
    M = reduced_matrix_numeric(solve_profile(params, so), xi, opts.N);
  }
  ModulationResult r = analyze_reduced(M, xi, opts.critical_band);
  r.in_trust_region = std::abs(params.a) <= opts.max_amplitude && std::abs(xi) <= std::abs(params.a);
  return r;
}

}  // namespace novikov

#endif  // NOVIKOV_MODULATION_HPP
