#ifndef NOVIKOV_SERIES_HPP
#define NOVIKOV_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <span>
#include <vector>

namespace novikov {

using complex = std::complex<double>;

/// Truncated two-sided Fourier series f(z) = sum_{|n| <= K} f_n e^{inz} of a
/// 2pi-periodic function. Modes beyond K read as zero.
class FourierSeries {
 public:
  FourierSeries() : coeffs_(1, complex{0.0, 0.0}) {}
  explicit FourierSeries(int max_mode)
      : coeffs_(static_cast<std::size_t>(2 * std::max(max_mode, 0) + 1), complex{0.0, 0.0}) {}

  static FourierSeries constant(double value) {
    FourierSeries s(0);
    s.coeffs_[0] = value;
    return s;
  }

  /// From real cosine coefficients c_n of sum c_n cos(nz).
  static FourierSeries from_cosine(std::span<const double> cos_coeffs) {
    const int K = cos_coeffs.empty() ? 0 : static_cast<int>(cos_coeffs.size()) - 1;
    FourierSeries s(K);
    if (cos_coeffs.empty()) return s;
    s.at(0) = cos_coeffs[0];
    for (int n = 1; n <= K; ++n) {
      s.at(n) = 0.5 * cos_coeffs[n];
      s.at(-n) = 0.5 * cos_coeffs[n];
    }
    return s;
  }

  /// From real sine coefficients s_n of sum s_n sin(nz); s_0 is ignored.
  static FourierSeries from_sine(std::span<const double> sin_coeffs) {
    const int K = sin_coeffs.empty() ? 0 : static_cast<int>(sin_coeffs.size()) - 1;
    FourierSeries s(K);
    for (int n = 1; n <= K; ++n) {
      s.at(n) = complex{0.0, -0.5 * sin_coeffs[n]};
      s.at(-n) = complex{0.0, 0.5 * sin_coeffs[n]};
    }
    return s;
  }

  int max_mode() const { return static_cast<int>(coeffs_.size() / 2); }

  complex operator[](int n) const {
    const int K = max_mode();
    return std::abs(n) > K ? complex{0.0, 0.0} : coeffs_[static_cast<std::size_t>(n + K)];
  }
  complex& at(int n) { return coeffs_.at(static_cast<std::size_t>(n + max_mode())); }

  std::span<const complex> coefficients() const { return coeffs_; }

  /// d^order/dz^order: multiplies mode n by (in)^order.
  FourierSeries derivative(int order = 1) const {
    FourierSeries d(*this);
    const int K = max_mode();
    for (int n = -K; n <= K; ++n) d.at(n) *= std::pow(complex{0.0, static_cast<double>(n)}, order);
    return d;
  }

  /// Exact product (full discrete convolution, no truncation).
  friend FourierSeries operator*(const FourierSeries& f, const FourierSeries& g) {
    const int Kf = f.max_mode();
    const int Kg = g.max_mode();
    FourierSeries h(Kf + Kg);
    for (int m = -Kf; m <= Kf; ++m) {
      const complex fm = f[m];
      if (fm == complex{0.0, 0.0}) continue;
      for (int n = -Kg; n <= Kg; ++n) h.at(m + n) += fm * g[n];
    }
    return h;
  }

  friend FourierSeries operator+(const FourierSeries& f, const FourierSeries& g) {
    FourierSeries h(std::max(f.max_mode(), g.max_mode()));
    const int K = h.max_mode();
    for (int n = -K; n <= K; ++n) h.at(n) = f[n] + g[n];
    return h;
  }

  friend FourierSeries operator-(const FourierSeries& f, const FourierSeries& g) {
    return f + (-1.0) * g;
  }

  friend FourierSeries operator*(complex s, const FourierSeries& f) {
    FourierSeries h(f);
    for (auto& c : h.coeffs_) c *= s;
    return h;
  }
  friend FourierSeries operator*(double s, const FourierSeries& f) { return complex{s, 0.0} * f; }

  complex evaluate(double z) const {
    complex sum{0.0, 0.0};
    const int K = max_mode();
    for (int n = -K; n <= K; ++n) sum += (*this)[n] * std::polar(1.0, n * z);
    return sum;
  }

  FourierSeries truncated(int K) const {
    FourierSeries t(K);
    for (int n = -K; n <= K; ++n) t.at(n) = (*this)[n];
    return t;
  }

 private:
  std::vector<complex> coeffs_;
};

/// Normalized L2 inner product <f, g> = (1/2pi) int f conj(g) dz.
inline complex inner_product(const FourierSeries& f, const FourierSeries& g) {
  const int K = std::min(f.max_mode(), g.max_mode());
  complex sum{0.0, 0.0};
  for (int n = -K; n <= K; ++n) sum += f[n] * std::conj(g[n]);
  return sum;
}

}  // namespace novikov

#endif  // NOVIKOV_SERIES_HPP
