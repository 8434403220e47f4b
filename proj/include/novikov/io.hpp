#ifndef NOVIKOV_IO_HPP
#define NOVIKOV_IO_HPP

// Plain-text artifacts. Every float is written with 17 significant digits and
// every line ends in LF, so identical inputs give byte-identical files.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "novikov/bloch.hpp"
#include "novikov/error.hpp"
#include "novikov/modulation.hpp"
#include "novikov/waveform.hpp"

namespace novikov {

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// JSON number token; non-finite values become null.
inline std::string json_number(double x) { return std::isfinite(x) ? format_double(x) : "null"; }

inline std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- profiles: {k, b, a, c, N, coeffs[]} ---

inline std::string profile_to_json(const PeriodicProfile& p) {
  std::string s = "{\"k\": " + json_number(p.params.k) + ", \"b\": " + json_number(p.params.b) +
                  ", \"a\": " + json_number(p.params.a) + ", \"c\": " + json_number(p.c) +
                  ", \"N\": " + std::to_string(p.truncation()) + ", \"coeffs\": [";
  for (std::size_t n = 0; n < p.coeffs.size(); ++n) s += (n ? ", " : "") + json_number(p.coeffs[n]);
  return s + "]}\n";
}

inline PeriodicProfile profile_from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    PeriodicProfile p;
    p.params = {j.at("k").get<double>(), j.at("b").get<double>(), j.at("a").get<double>()};
    p.c = j.at("c").get<double>();
    p.coeffs = j.at("coeffs").get<std::vector<double>>();
    if (j.at("N").get<int>() != p.truncation()) throw DimensionError("profile JSON: N does not match coeffs length");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed profile JSON: ") + e.what());
  }
}

// --- spectra: xi,re,im,branch_hint ---

inline std::string spectrum_csv(std::span<const SpectrumSlice> slices) {
  const std::vector<std::vector<int>> branches = assign_branches(slices);
  std::string s = "xi,re,im,branch_hint\n";
  for (std::size_t i = 0; i < slices.size(); ++i)
    for (std::size_t j = 0; j < slices[i].eigenvalues.size(); ++j) {
      const complex z = slices[i].eigenvalues[j];
      s += format_double(slices[i].xi) + "," + format_double(z.real()) + "," + format_double(z.imag()) + "," +
           std::to_string(branches[i][j]) + "\n";
    }
  return s;
}

// --- classification: k,b,a,xi,delta,verdict,growth_rate ---

struct ClassificationRecord {
  WaveParams params;
  double xi = 0.0;
  ModulationResult result;
};

inline std::string classification_csv(std::span<const ClassificationRecord> records) {
  std::string s = "k,b,a,xi,delta,verdict,growth_rate\n";
  for (const auto& r : records)
    s += format_double(r.params.k) + "," + format_double(r.params.b) + "," + format_double(r.params.a) + "," +
         format_double(r.xi) + "," + format_double(r.result.delta) + "," + to_string(r.result.verdict) + "," +
         format_double(r.result.growth_rate) + "\n";
  return s;
}

inline std::string classification_json(const ClassificationRecord& r) {
  const ModulationResult& m = r.result;
  std::string s = "{\"k\": " + json_number(r.params.k) + ", \"b\": " + json_number(r.params.b) +
                  ", \"a\": " + json_number(r.params.a) + ", \"xi\": " + json_number(r.xi) +
                  ", \"q0\": " + json_number(m.q.q0) + ", \"q1\": " + json_number(m.q.q1) +
                  ", \"q2\": " + json_number(m.q.q2) + ", \"q3\": " + json_number(m.q.q3) +
                  ", \"delta\": " + json_number(m.delta) + ", \"verdict\": " + json_string(to_string(m.verdict)) +
                  ", \"growth_rate\": " + json_number(m.growth_rate) +
                  ", \"in_trust_region\": " + (m.in_trust_region ? "true" : "false") + ", \"roots\": [";
  for (std::size_t i = 0; i < m.roots.size(); ++i)
    s += (i ? ", " : "") + std::string("[") + json_number(m.roots[i].real()) + ", " + json_number(m.roots[i].imag()) + "]";
  return s + "]}\n";
}

}  // namespace novikov

#endif  // NOVIKOV_IO_HPP
