#ifndef TOEPLITZ_REPORT_HPP
#define TOEPLITZ_REPORT_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "curve.hpp"
#include "format.hpp"
#include "roots.hpp"
#include "spectral.hpp"
#include "symbol.hpp"

namespace toeplitz {

struct PointReport {
  std::string text;  // as given on input
  cplx lambda;
  Classification classification;
  double essential_distance = 0.0;
};

struct Report {
  std::string input_text;
  std::string symbol_text;  // normalized; parses back to the same symbol
  bool proper = false;
  bool rat_t = false;
  std::optional<RatTDiagnostics> diagnostics;  // present iff rat_t (and nonzero)
  std::vector<PointReport> points;
  std::vector<std::string> notes;
  RootSet poles;
  std::optional<RootSet> zeros;  // absent for the zero symbol
  RootConfig config;
};

inline Report build_report(const RationalSymbol& w, std::string input_text,
                           const std::vector<std::pair<std::string, cplx>>& points, const RootConfig& cfg = {}) {
  Report r;
  r.input_text = std::move(input_text);
  r.symbol_text = w.to_string();
  r.proper = w.proper();
  r.rat_t = w.rat_t(cfg);
  r.notes = w.notes();
  r.config = cfg;
  r.poles = w.poles(cfg);
  if (!w.is_zero()) r.zeros = find_roots(w.numerator(), cfg);
  if (r.rat_t && !w.is_zero()) r.diagnostics = rat_t_diagnostics(w, cfg);
  if (r.rat_t && w.is_zero()) r.notes.push_back("zero symbol: Rat(T) diagnostics undefined");
  for (const auto& [text, lam] : points) {
    const PencilAnalysis a = analyze_pencil(w, lam, cfg);
    PointReport p{text, lam, classify_counts(a.counts), 0.0};
    if (!a.counts.identically_zero) {
      // a nonzero constant pencil has no roots: infinitely far from the curve
      p.essential_distance = std::numeric_limits<double>::infinity();
      for (const Root& z : a.roots.roots)
        p.essential_distance = std::min(p.essential_distance, std::abs(std::abs(z.value) - 1.0));
    }
    r.points.push_back(std::move(p));
  }
  return r;
}

namespace detail {

inline nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

inline nlohmann::json complex_json(cplx c) { return {{"re", c.real()}, {"im", c.imag()}}; }

inline nlohmann::json roots_json(const RootSet& rs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Root& r : rs.roots)
    arr.push_back({{"value", complex_json(r.value)},
                   {"multiplicity", r.multiplicity},
                   {"location", std::string(to_string(r.location))}});
  return arr;
}

}  // namespace detail

inline nlohmann::json to_json(const Classification& c) {
  nlohmann::json j{{"verdict", std::string(to_string(c.verdict))},
                   {"essential", c.essential},
                   {"index", c.index ? nlohmann::json(*c.index) : nlohmann::json(nullptr)},
                   {"counts",
                    {{"k_q", c.counts.k_q},
                     {"k_lambda_minus", c.counts.k_lambda_minus},
                     {"k_lambda_zero", c.counts.k_lambda_zero},
                     {"identically_zero", c.counts.identically_zero}}}};
  return j;
}

inline nlohmann::json to_json(const RatTDiagnostics& d) {
  return {{"kernel_dim", d.kernel_dim},
          {"range_closure_codim", d.range_closure_codim},
          {"injective", d.injective},
          {"dense_range", d.dense_range},
          {"sigma_r_empty_hint", d.sigma_r_empty_hint}};
}

inline nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["input"] = r.input_text;
  j["symbol_text"] = r.symbol_text;
  j["proper"] = r.proper;
  j["rat_t"] = r.rat_t;
  j["diagnostics"] = r.diagnostics ? to_json(*r.diagnostics) : nlohmann::json(nullptr);
  j["poles"] = detail::roots_json(r.poles);
  j["zeros"] = r.zeros ? detail::roots_json(*r.zeros) : nlohmann::json(nullptr);
  nlohmann::json pts = nlohmann::json::array();
  for (const PointReport& p : r.points) {
    nlohmann::json e = to_json(p.classification);
    e["lambda"] = detail::complex_json(p.lambda);
    e["lambda_text"] = p.text;
    e["essential_distance"] = detail::number_or_null(p.essential_distance);
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  j["notes"] = r.notes;
  j["config"] = {{"tol_circle", r.config.tol_circle},
                 {"tol_deflate", r.config.tol_deflate},
                 {"cluster_radius", r.config.cluster_radius},
                 {"tol_multiple", r.config.tol_multiple},
                 {"max_iters", r.config.max_iters}};
  return j;
}

/// Plain-text summary for terminals.
inline std::string to_text(const Report& r) {
  std::string out;
  auto line = [&](const std::string& s) { out += s + '\n'; };
  line("symbol      " + r.symbol_text);
  line("proper      " + std::string(r.proper ? "yes" : "no"));
  line("Rat(T)      " + std::string(r.rat_t ? "yes" : "no"));
  auto roots_text = [](const RootSet& rs) {
    std::string s;
    for (const Root& z : rs.roots) {
      if (!s.empty()) s += ", ";
      s += format_complex(z.value);
      if (z.multiplicity > 1) s += " (x" + std::to_string(z.multiplicity) + ")";
      s += " [" + std::string(to_string(z.location)) + "]";
    }
    return s.empty() ? std::string("none") : s;
  };
  line("poles       " + roots_text(r.poles));
  line("zeros       " + (r.zeros ? roots_text(*r.zeros) : std::string("identically zero")));
  if (r.diagnostics) {
    const RatTDiagnostics& d = *r.diagnostics;
    line("kernel dim  " + std::to_string(d.kernel_dim));
    line("codim       " + std::to_string(d.range_closure_codim));
    line("injective   " + std::string(d.injective ? "yes" : "no"));
    line("dense range " + std::string(d.dense_range ? "yes" : "no"));
  }
  for (const PointReport& p : r.points) {
    const Classification& c = p.classification;
    std::string s = "lambda " + format_complex(p.lambda) + ": " + std::string(to_string(c.verdict));
    s += c.index ? ", index " + std::to_string(*c.index) : std::string(", not Fredholm");
    s += " (k_q=" + std::to_string(c.counts.k_q) + " k-=" + std::to_string(c.counts.k_lambda_minus) +
         " k0=" + std::to_string(c.counts.k_lambda_zero) + ")";
    line(s);
  }
  for (const std::string& n : r.notes) line("note: " + n);
  return out;
}

}  // namespace toeplitz

#endif  // TOEPLITZ_REPORT_HPP
