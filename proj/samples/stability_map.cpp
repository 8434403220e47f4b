// Stability map from a JSON configuration, written as CSV.
// Usage: sample_stability_map [config.json] [out.csv]

#include <cstdio>
#include <exception>
#include <string>

#include "novikov/novikov.hpp"

int main(int argc, char** argv) {
  using namespace novikov;
  try {
    ScanConfig cfg;
    if (argc > 1) cfg = scan_config_from_json(read_text_file(argv[1]));
    if (argc > 2) cfg.output = argv[2];
    const StabilityMap map = run_scan(cfg);
    for (const StabilityRow& r : map.rows) {
      std::printf("k = %-8.4g a = %-6.3g %-9s", r.k, r.a, r.error.empty() ? to_string(r.verdict).c_str() : "Error");
      if (r.growth_rate_hill) std::printf(" Hill growth %.3g", *r.growth_rate_hill);
      std::printf("\n");
    }
    if (!cfg.output.empty()) write_text_file(cfg.output, stability_map_csv(map));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
