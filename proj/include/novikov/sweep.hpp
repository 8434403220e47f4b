#ifndef NOVIKOV_SWEEP_HPP
#define NOVIKOV_SWEEP_HPP

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "novikov/bloch.hpp"
#include "novikov/error.hpp"
#include "novikov/io.hpp"
#include "novikov/modulation.hpp"
#include "novikov/parallel.hpp"
#include "novikov/waveform.hpp"

namespace novikov {

/// Bloch frequency as a function of amplitude: fixed, or xi = factor * |a|.
struct XiRule {
  enum class Kind { Fixed, Proportional };
  Kind kind = Kind::Proportional;
  double value = 0.1;

  double operator()(double a) const { return kind == Kind::Fixed ? value : value * std::abs(a); }
  static XiRule fixed(double xi) { return {Kind::Fixed, xi}; }
  static XiRule proportional(double factor) { return {Kind::Proportional, factor}; }
};

enum class ScanMode { Asymptotic, Numeric, Both };

inline std::string to_string(ScanMode m) {
  switch (m) {
    case ScanMode::Asymptotic: return "asymptotic";
    case ScanMode::Numeric: return "numeric";
    default: return "both";
  }
}

inline ScanMode parse_scan_mode(const std::string& s) {
  if (s == "asymptotic") return ScanMode::Asymptotic;
  if (s == "numeric") return ScanMode::Numeric;
  if (s == "both") return ScanMode::Both;
  throw DomainError("unknown mode '" + s + "' (expected asymptotic, numeric or both)");
}

struct ScanConfig {
  double b = 1.0;
  std::vector<double> a_list{0.02};
  double k_min = 1.0;
  double k_max = 2.0;
  int k_count = 11;
  XiRule xi_rule;
  int N = 32;
  ScanMode mode = ScanMode::Both;
  std::string output;  // empty: no file
  int threads = 0;     // 0: NOVIKOV_THREADS or hardware concurrency

  void validate() const {
    if (!(b > 0.0)) throw DomainError("scan: b must be positive");
    if (a_list.empty()) throw DomainError("scan: a_list is empty");
    if (k_count < 1) throw DomainError("scan: k grid needs at least one point");
    if (!(k_min > 0.0) || !(k_max >= k_min)) throw DomainError("scan: k range must satisfy 0 < k_min <= k_max");
    if (N < 8) throw DomainError("scan: N must be at least 8");
  }

  std::vector<double> k_grid() const {
    std::vector<double> ks(static_cast<std::size_t>(k_count));
    for (int i = 0; i < k_count; ++i) ks[i] = k_count == 1 ? k_min : k_min + (k_max - k_min) * i / (k_count - 1);
    return ks;
  }
};

struct StabilityRow {
  double k = 0.0;
  double a = 0.0;
  double xi = 0.0;
  double delta = 0.0;
  Verdict verdict = Verdict::Critical;
  double growth_rate_predicted = 0.0;
  std::optional<double> growth_rate_hill;  // numeric and both modes
  std::optional<double> delta_numeric;     // both mode: numeric reduced-matrix discriminant
  std::optional<Verdict> verdict_numeric;  // both mode
  std::string error;                       // non-empty when the grid point failed

  bool operator==(const StabilityRow&) const = default;
};

struct StabilityMap {
  double b = 1.0;
  ScanMode mode = ScanMode::Both;
  std::vector<StabilityRow> rows;

  bool operator==(const StabilityMap&) const = default;
};

inline StabilityRow scan_point(const ScanConfig& cfg, double k, double a) {
  StabilityRow row;
  row.k = k;
  row.a = a;
  row.xi = cfg.xi_rule(a);
  try {
    const WaveParams params{k, cfg.b, a};
    if (row.xi == 0.0) {
      if (a != 0.0) throw DomainError("xi = 0 leaves the scaled cubic undefined");
      // Constant state: purely imaginary spectrum.
      params.validate();
      row.verdict = Verdict::Stable;
      if (cfg.mode != ScanMode::Asymptotic) row.growth_rate_hill = 0.0;
      if (cfg.mode == ScanMode::Both) row.delta_numeric = 0.0, row.verdict_numeric = Verdict::Stable;
      return row;
    }
    if (cfg.mode == ScanMode::Asymptotic) {
      const AdmissibilityReport adm = check_admissible(asymptotic_profile(params, cfg.N));
      if (!adm.admissible()) throw DomainError("asymptotic profile violates the smooth-wave conditions");
      const ModulationResult m = classify(params, row.xi);
      row.delta = m.delta;
      row.verdict = m.verdict;
      row.growth_rate_predicted = m.growth_rate;
      return row;
    }
    SolveOptions so;
    so.N = cfg.N;
    const PeriodicProfile p = solve_profile(params, so);
    const ModulationResult numeric = analyze_reduced(reduced_matrix_numeric(p, row.xi, cfg.N), row.xi);
    row.growth_rate_hill = origin_growth_rate(spectrum_slice(p, row.xi, cfg.N));
    if (cfg.mode == ScanMode::Numeric) {
      row.delta = numeric.delta;
      row.verdict = numeric.verdict;
      row.growth_rate_predicted = numeric.growth_rate;
    } else {
      const ModulationResult asym = classify(params, row.xi);
      row.delta = asym.delta;
      row.verdict = asym.verdict;
      row.growth_rate_predicted = asym.growth_rate;
      row.delta_numeric = numeric.delta;
      row.verdict_numeric = numeric.verdict;
    }
  } catch (const std::exception& e) {
    row.delta = 0.0;
    row.verdict = Verdict::Critical;
    row.growth_rate_predicted = 0.0;
    row.growth_rate_hill.reset();
    row.delta_numeric.reset();
    row.verdict_numeric.reset();
    row.error = e.what();
  }
  return row;
}

/// One row per (k, a), k-major in grid order. Failed points become rows with
/// a non-empty `error`.
inline StabilityMap run_scan(const ScanConfig& cfg) {
  cfg.validate();
  const std::vector<double> ks = cfg.k_grid();
  std::vector<std::pair<double, double>> points;
  for (double k : ks)
    for (double a : cfg.a_list) points.emplace_back(k, a);
  StabilityMap map;
  map.b = cfg.b;
  map.mode = cfg.mode;
  map.rows = ordered_parallel_map(
      points.size(), [&](std::size_t i) { return scan_point(cfg, points[i].first, points[i].second); }, cfg.threads);
  return map;
}

enum class DiscriminantModel { ReducedAsymptotic, ReducedNumeric, ClosedFormExpansion };

struct ThresholdOptions {
  DiscriminantModel model = DiscriminantModel::ReducedAsymptotic;
  double width = 1e-4;
  int N = 32;
};

inline double model_discriminant(double b, double k, double a, double xi, const ThresholdOptions& opts) {
  switch (opts.model) {
    case DiscriminantModel::ClosedFormExpansion: return expansion_discriminant(b, k, a, xi);
    case DiscriminantModel::ReducedNumeric: {
      ClassifyOptions co;
      co.model = ReducedModel::Numeric;
      co.N = opts.N;
      return classify({k, b, a}, xi, co).delta;
    }
    default: return classify({k, b, a}, xi).delta;
  }
}

/// Bisection in k on the sign of Delta(a, xi(a); b, k) down to bracket width
/// `opts.width`; returns the midpoint of the final bracket.
inline double threshold_locate(double b, double a, const XiRule& xi_rule, std::pair<double, double> bracket,
                               const ThresholdOptions& opts = {}) {
  auto [lo, hi] = bracket;
  if (!(lo > 0.0 && hi > lo)) throw DomainError("threshold bracket must satisfy 0 < lo < hi");
  const double xi = xi_rule(a);
  const auto f = [&](double k) { return model_discriminant(b, k, a, xi, opts); };
  double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo * fhi < 0.0))
    throw BracketingError("no sign change of the discriminant on [" + format_double(lo) + ", " + format_double(hi) +
                          "] (Delta = " + format_double(flo) + ", " + format_double(fhi) + ")");
  while (hi - lo > opts.width) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// --- persistence ---

inline std::string optional_field(const std::optional<double>& x) { return x ? format_double(*x) : ""; }

/// Columns: k,a,xi,delta,verdict,growth_rate_predicted,growth_rate_hill,delta_numeric,verdict_numeric,error.
/// Absent optional values are empty fields; failed rows carry verdict "Error".
inline std::string stability_map_csv(const StabilityMap& map) {
  std::string s = "k,a,xi,delta,verdict,growth_rate_predicted,growth_rate_hill,delta_numeric,verdict_numeric,error\n";
  for (const StabilityRow& r : map.rows) {
    std::string err = r.error;
    for (char& ch : err)
      if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
    s += format_double(r.k) + "," + format_double(r.a) + "," + format_double(r.xi) + "," + format_double(r.delta) + "," +
         (r.error.empty() ? to_string(r.verdict) : std::string("Error")) + "," +
         format_double(r.growth_rate_predicted) + "," + optional_field(r.growth_rate_hill) + "," +
         optional_field(r.delta_numeric) + "," + (r.verdict_numeric ? to_string(*r.verdict_numeric) : "") + "," + err +
         "\n";
  }
  return s;
}

inline std::string stability_map_json(const StabilityMap& map) {
  const auto opt = [](const std::optional<double>& x) { return x ? json_number(*x) : std::string("null"); };
  std::string s = "{\"b\": " + json_number(map.b) + ", \"mode\": " + json_string(to_string(map.mode)) + ", \"rows\": [";
  for (std::size_t i = 0; i < map.rows.size(); ++i) {
    const StabilityRow& r = map.rows[i];
    s += std::string(i ? ",\n  " : "\n  ") + "{\"k\": " + json_number(r.k) + ", \"a\": " + json_number(r.a) +
         ", \"xi\": " + json_number(r.xi) + ", \"delta\": " + json_number(r.delta) +
         ", \"verdict\": " + json_string(to_string(r.verdict)) +
         ", \"growth_rate_predicted\": " + json_number(r.growth_rate_predicted) +
         ", \"growth_rate_hill\": " + opt(r.growth_rate_hill) + ", \"delta_numeric\": " + opt(r.delta_numeric) +
         ", \"verdict_numeric\": " + (r.verdict_numeric ? json_string(to_string(*r.verdict_numeric)) : "null") +
         ", \"error\": " + json_string(r.error) + "}";
  }
  return s + (map.rows.empty() ? "]}\n" : "\n]}\n");
}

inline Verdict parse_verdict(const std::string& s) {
  if (s == "Stable") return Verdict::Stable;
  if (s == "Unstable") return Verdict::Unstable;
  if (s == "Critical") return Verdict::Critical;
  throw IoError("unknown verdict '" + s + "'");
}

inline StabilityMap stability_map_from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    StabilityMap map;
    map.b = j.at("b").get<double>();
    map.mode = parse_scan_mode(j.at("mode").get<std::string>());
    const auto opt = [](const nlohmann::json& v) -> std::optional<double> {
      if (v.is_null()) return std::nullopt;
      return v.get<double>();
    };
    for (const auto& r : j.at("rows")) {
      StabilityRow row;
      row.k = r.at("k").get<double>();
      row.a = r.at("a").get<double>();
      row.xi = r.at("xi").get<double>();
      row.delta = r.at("delta").get<double>();
      row.verdict = parse_verdict(r.at("verdict").get<std::string>());
      row.growth_rate_predicted = r.at("growth_rate_predicted").get<double>();
      row.growth_rate_hill = opt(r.at("growth_rate_hill"));
      row.delta_numeric = opt(r.at("delta_numeric"));
      if (!r.at("verdict_numeric").is_null()) row.verdict_numeric = parse_verdict(r.at("verdict_numeric").get<std::string>());
      row.error = r.at("error").get<std::string>();
      map.rows.push_back(std::move(row));
    }
    return map;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed stability map JSON: ") + e.what());
  }
}

/// Scan configuration file (JSON):
///   {"b": 1, "a_list": [0.02], "k_grid": {"min": 1.0, "max": 2.2, "count": 13},
///    "xi_rule": {"kind": "proportional" | "fixed", "value": 0.1},
///    "N": 32, "mode": "asymptotic" | "numeric" | "both", "output": "map.csv", "threads": 0}
/// Every key is optional; missing keys keep the ScanConfig defaults.
inline ScanConfig scan_config_from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    ScanConfig cfg;
    cfg.b = j.value("b", cfg.b);
    if (j.contains("a_list")) cfg.a_list = j.at("a_list").get<std::vector<double>>();
    if (j.contains("k_grid")) {
      const auto& g = j.at("k_grid");
      cfg.k_min = g.value("min", cfg.k_min);
      cfg.k_max = g.value("max", cfg.k_max);
      cfg.k_count = g.value("count", cfg.k_count);
    }
    if (j.contains("xi_rule")) {
      const auto& x = j.at("xi_rule");
      const std::string kind = x.value("kind", std::string("proportional"));
      if (kind == "fixed") cfg.xi_rule = XiRule::fixed(x.value("value", 0.01));
      else if (kind == "proportional") cfg.xi_rule = XiRule::proportional(x.value("value", 0.1));
      else throw DomainError("unknown xi_rule kind '" + kind + "'");
    }
    cfg.N = j.value("N", cfg.N);
    if (j.contains("mode")) cfg.mode = parse_scan_mode(j.at("mode").get<std::string>());
    cfg.output = j.value("output", cfg.output);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.validate();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed scan config: ") + e.what());
  }
}

}  // namespace novikov

#endif  // NOVIKOV_SWEEP_HPP
