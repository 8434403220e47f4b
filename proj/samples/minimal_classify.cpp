// Classify one wave with both reduced models and compare with the Hill spectrum.

#include <cstdio>

#include "novikov/novikov.hpp"

int main() {
  using namespace novikov;
  const WaveParams wave{1.0, 1.0, 0.05};  // k, b, a
  const double xi = 0.005;

  const ModulationResult asym = classify(wave, xi);
  ClassifyOptions opts;
  opts.model = ReducedModel::Numeric;
  const ModulationResult num = classify(wave, xi, opts);

  const PeriodicProfile p = solve_profile(wave);
  const double hill = origin_growth_rate(spectrum_slice(p, xi));

  std::printf("asymptotic: Delta = %s, %s\n", format_double(asym.delta).c_str(), to_string(asym.verdict).c_str());
  std::printf("numeric:    Delta = %s, %s\n", format_double(num.delta).c_str(), to_string(num.verdict).c_str());
  std::printf("Hill growth rate near the origin: %s\n", format_double(hill).c_str());
}
