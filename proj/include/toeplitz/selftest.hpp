#ifndef TOEPLITZ_SELFTEST_HPP
#define TOEPLITZ_SELFTEST_HPP

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "curve.hpp"
#include "raster.hpp"
#include "spectral.hpp"
#include "symbol.hpp"

namespace toeplitz::selftest {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // first failures, or a summary
};

namespace detail {

/// Collects failures; keeps the first few messages.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 5) {
      if (!msg_.empty()) msg_ += "; ";
      msg_ += what;
    }
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    if (ok()) return std::to_string(checks_) + " checks";
    return std::to_string(failures_) + "/" + std::to_string(checks_) + " failed: " + msg_;
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::string msg_;
};

inline std::string str(cplx c) {
  std::ostringstream os;
  os.precision(17);
  os << c;
  return os.str();
}

inline cplx unit_box(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

inline Polynomial random_poly(std::mt19937_64& rng, int degree) {
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
  for (cplx& x : c) x = unit_box(rng);
  while (std::abs(c.back()) < 0.2) c.back() = unit_box(rng);
  return Polynomial(std::move(c));
}

inline RationalSymbol random_symbol(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> d(0, max_deg);
  return RationalSymbol::from_polynomials(random_poly(rng, d(rng)), random_poly(rng, d(rng)));
}

inline RationalSymbol random_rat_t(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> dq(1, max_deg), ds(0, max_deg);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<cplx> poles(static_cast<std::size_t>(dq(rng)));
  for (cplx& p : poles) p = std::polar(1.0, phase(rng));
  return RationalSymbol::from_polynomials(random_poly(rng, ds(rng)), Polynomial::from_roots(poles));
}

inline cplx random_lambda(std::mt19937_64& rng, double half) {
  std::uniform_real_distribution<double> u(-half, half);
  return {u(rng), u(rng)};
}

inline RationalSymbol parametric(cplx alpha) {
  return RationalSymbol::from_polynomials(Polynomial{alpha, 1}, Polynomial{1, -2, 1});
}

inline std::vector<cplx> unclipped_values(const CurvePolyline& c) {
  std::vector<cplx> v;
  for (const auto& seg : c.segments)
    for (const CurveSample& s : seg)
      if (!s.clipped) v.push_back(s.value);
  return v;
}

}  // namespace detail

/// Line symbol (z + i/2)/(z - 1): resolvent below y = 3/4 - 2x, point
/// spectrum with index 1 above, continuous spectrum on the line.
inline CheckResult check_line_symbol(const RootConfig& cfg) {
  detail::Tally t;
  const cplx alpha{0.0, -0.5};
  const RationalSymbol w = RationalSymbol::from_polynomials(Polynomial{-alpha, 1}, Polynomial{-1, 1});
  // 20 x 10 cell centers over [-2,2]^2; none lies within 1e-6 of the line
  int off_line = 0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 10; ++j) {
      const cplx lam{-2.0 + 4.0 * (i + 0.5) / 20.0, -2.0 + 4.0 * (j + 0.5) / 10.0};
      const double side = (lam.imag() - (0.75 - 2.0 * lam.real())) / std::sqrt(5.0);
      if (std::abs(side) <= 1e-6) continue;
      ++off_line;
      const Classification c = classify(w, lam, cfg);
      if (side < 0.0)
        t.expect(c.verdict == Verdict::Resolvent && c.index == 0, "lambda " + detail::str(lam) + " not resolvent");
      else
        t.expect(c.verdict == Verdict::PointSpectrum && c.index == 1, "lambda " + detail::str(lam) + " not point/1");
    }
  t.expect(off_line == 200, "grid touches the line");
  // points on the line: images of the circle away from the pole
  for (int k = 1; k <= 20; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / 21.0;
    const cplx lam = *evaluate_symbol(w, std::polar(1.0, theta));
    t.expect(std::abs((lam.imag() - (0.75 - 2.0 * lam.real())) / std::sqrt(5.0)) <= 1e-6,
             "curve point off the line");
    t.expect(classify(w, lam, cfg).verdict == Verdict::ContinuousSpectrum,
             "lambda " + detail::str(lam) + " on the line not continuous");
  }
  return {1, "line symbol spectrum", t.ok(), t.summary()};
}

/// 1/(z-1)^2: the curve is Re = 1/4 - Im^2 and every lambda is an eigenvalue.
inline CheckResult check_parabola(const RootConfig& cfg) {
  detail::Tally t;
  const RationalSymbol w = parse_symbol("1/(z-1)^2");
  CurveOptions opt;
  opt.n_base = 2048;
  opt.roots = cfg;
  const std::vector<cplx> v = detail::unclipped_values(sample_curve(w, opt));
  t.expect(v.size() >= 2000, "only " + std::to_string(v.size()) + " curve samples");
  for (std::size_t k = 0; k < v.size() && k < 2000; ++k)
    t.expect(std::abs(v[k].real() - (0.25 - v[k].imag() * v[k].imag())) <= 1e-8,
             "sample " + detail::str(v[k]) + " off the parabola");
  std::mt19937_64 rng(2);
  int resolvent = 0;
  for (int k = 0; k < 100; ++k) {
    const cplx lam = detail::random_lambda(rng, 3.0);
    const Classification c = classify(w, lam, cfg);
    resolvent += c.verdict == Verdict::Resolvent;
    t.expect(c.verdict == Verdict::PointSpectrum, "lambda " + detail::str(lam) + " not point");
  }
  t.expect(resolvent == 0, std::to_string(resolvent) + " resolvent verdicts");
  return {2, "parabola curve", t.ok(), t.summary()};
}

/// z/(z^2+1): real rays |v| >= 1 as stated, index 1 elsewhere.
inline CheckResult check_disconnected(const RootConfig& cfg) {
  detail::Tally t;
  const RationalSymbol w = parse_symbol("z/(z^2+1)");
  CurveOptions opt;
  opt.roots = cfg;
  double min_mod = std::numeric_limits<double>::infinity();
  for (const cplx v : detail::unclipped_values(sample_curve(w, opt))) {
    t.expect(std::abs(v.imag()) <= 1e-9 * std::max(1.0, std::abs(v)), "sample " + detail::str(v) + " not real");
    min_mod = std::min(min_mod, std::abs(v));
  }
  t.expect(min_mod >= 1.0 - 1e-9, "curve reaches |v| = " + std::to_string(min_mod) + " < 1");
  for (cplx lam : {cplx{0, 0}, cplx{0, 2}, cplx{-1, 1}}) {
    const Classification c = classify(w, lam, cfg);
    t.expect(c.verdict == Verdict::PointSpectrum && c.index == 1, "lambda " + detail::str(lam) + " not point/1");
  }
  for (cplx lam : {cplx{1.5, 0}, cplx{-2, 0}})
    t.expect(classify(w, lam, cfg).verdict == Verdict::ContinuousSpectrum,
             "lambda " + detail::str(lam) + " not continuous");
  const Classification half = classify(w, 0.5, cfg);
  t.expect(half.verdict == Verdict::PointSpectrum && half.index == 1,
           "lambda 0.5 is " + std::string(to_string(half.verdict)) + " with k0 = " +
               std::to_string(half.counts.k_lambda_zero));
  return {3, "disconnected essential spectrum", t.ok(), t.summary()};
}

/// (z+alpha)/(z-1)^2 for the three positions of alpha.
inline CheckResult check_trichotomy(const RootConfig& cfg) {
  detail::Tally t;
  {
    const Classification c = classify(detail::parametric({-0.5, 0.125}), -0.5, cfg);
    t.expect(c.verdict == Verdict::Resolvent, "case (i): lambda -1/2 not resolvent");
  }
  std::mt19937_64 rng(4);
  {
    const RationalSymbol w = detail::parametric(0.0);
    const Classification c = classify(w, -0.5, cfg);
    t.expect(c.verdict == Verdict::ContinuousSpectrum && c.counts.k_lambda_zero == 2,
             "case (ii): lambda -1/2 not continuous with k0 = 2");
    for (int k = 0; k < 100;) {
      const cplx lam = detail::random_lambda(rng, 3.0);
      if (essential_distance(w, lam, cfg) <= 1e-6) continue;
      ++k;
      t.expect(classify(w, lam, cfg).verdict == Verdict::PointSpectrum,
               "case (ii): lambda " + detail::str(lam) + " not point");
    }
  }
  {
    const RationalSymbol w = detail::parametric(1.0);
    int resolvent = 0;
    for (int k = 0; k < 100; ++k) {
      const cplx lam = detail::random_lambda(rng, 3.0);
      const Verdict v = classify(w, lam, cfg).verdict;
      resolvent += v == Verdict::Resolvent;
      t.expect(v == Verdict::PointSpectrum, "case (iii): lambda " + detail::str(lam) + " not point");
    }
    t.expect(resolvent == 0, "case (iii): resolvent verdicts");
  }
  return {4, "parametric trichotomy", t.ok(), t.summary()};
}

/// Half line for alpha = 0, explicit parabola x(y) for alpha = 1.
inline CheckResult check_half_line_parabola(const RootConfig& cfg) {
  detail::Tally t;
  CurveOptions opt;
  opt.roots = cfg;
  {
    const cplx alpha = 0.0;
    const cplx start = -(alpha + 1.0) * (1.0 + 2.0 * std::conj(alpha)) / (4.0 * (1.0 - std::norm(alpha)));
    const cplx dir = -(alpha + 1.0) / std::abs(alpha + 1.0);
    for (const cplx v : detail::unclipped_values(sample_curve(detail::parametric(alpha), opt))) {
      const cplx rel = (v - start) / dir;
      t.expect(std::abs(rel.imag()) <= 1e-6 && rel.real() >= -1e-6, "alpha 0: " + detail::str(v) + " off the half line");
    }
  }
  {
    const cplx alpha = 1.0;
    const double a = alpha.real(), b = alpha.imag();
    const double n2 = std::norm(alpha + 1.0), d = std::norm(alpha) + a;
    for (const cplx v : detail::unclipped_values(sample_curve(detail::parametric(alpha), opt))) {
      const cplx u = v / -(alpha + 1.0);
      const double y = u.imag();
      const double x = n2 * n2 / (d * d) * y * y + (a + 1.0) * n2 * b / (d * d) * y +
                       std::norm(alpha) * (1.0 - std::norm(alpha)) / (d * d);
      t.expect(std::abs(u.real() - x) <= 1e-6 * std::max(1.0, std::abs(x)), "alpha 1: " + detail::str(v) + " off x(y)");
    }
  }
  return {5, "half line vs parabola", t.ok(), t.summary()};
}

/// fredholm_index against k_q minus an argument-principle count.
inline CheckResult check_index_oracle(const RootConfig& cfg) {
  detail::Tally t;
  std::mt19937_64 rng(6);
  for (int k = 0; k < 500;) {
    const RationalSymbol w = detail::random_symbol(rng, 5);
    const cplx lam = detail::random_lambda(rng, 3.0);
    if (essential_distance(w, lam, cfg) <= 1e-2) continue;
    ++k;
    const Polynomial pencil = axpy_lambda(w.denominator(), w.numerator(), lam, cfg.tol_deflate);
    const int k_q = w.poles(cfg).count(CircleLocation::Inside) + w.poles(cfg).count(CircleLocation::OnCircle);
    try {
      const int oracle = k_q - count_roots_in_disk_argument_principle(pencil, 1.0, 4096);
      t.expect(fredholm_index(w, lam, cfg) == oracle, "symbol " + w.to_string() + " at " + detail::str(lam));
    } catch (const ContourTooCloseToRoot&) {
      t.expect(false, "contour too close to a root for " + w.to_string());
    }
  }
  return {6, "index oracle equivalence", t.ok(), t.summary()};
}

inline CheckResult check_kernel_codim(const RootConfig& cfg) {
  detail::Tally t;
  t.expect(rat_t_diagnostics(parse_symbol("1/(z-1)^2"), cfg).kernel_dim == 2, "1/(z-1)^2 kernel_dim != 2");
  t.expect(rat_t_diagnostics(parse_symbol("(z-2)/(z-1)"), cfg).kernel_dim == 1, "(z-2)/(z-1) kernel_dim != 1");
  {
    const RationalSymbol w = parse_symbol("(z-0.5)/(z-1)");
    const RatTDiagnostics d = rat_t_diagnostics(w, cfg);
    t.expect(d.kernel_dim == 0 && d.range_closure_codim == 0, "(z-1/2)/(z-1) kernel/codim != 0");
    t.expect(classify(w, 0.0, cfg).verdict == Verdict::Resolvent, "(z-1/2)/(z-1) at 0 not resolvent");
  }
  std::mt19937_64 rng(7);
  int tested = 0;
  for (int k = 0; k < 1000; ++k) {
    const RationalSymbol w = detail::random_rat_t(rng, 5);
    if (w.is_zero() || !w.rat_t(cfg)) continue;
    ++tested;
    const RatTDiagnostics d = rat_t_diagnostics(w, cfg);
    t.expect(!(d.kernel_dim > 0 && d.range_closure_codim > 0), "both kernel and codim for " + w.to_string());
  }
  t.expect(tested >= 990, "only " + std::to_string(tested) + " symbols recognized as Rat(T)");
  return {7, "kernel/codim formulas", t.ok(), t.summary()};
}

inline CheckResult check_partition(const RootConfig& cfg) {
  detail::Tally t;
  std::mt19937_64 rng(8);
  for (int k = 0; k < 10000; ++k) {
    const RationalSymbol w = detail::random_symbol(rng, 5);
    const cplx lam = detail::random_lambda(rng, 3.0);
    const SpectralCounts c = counts(w, lam, cfg);
    const auto cond = partition_conditions(c);
    const auto holding = std::count(cond.begin(), cond.end(), true);
    t.expect(holding == 1, std::to_string(holding) + " verdicts for " + w.to_string() + " at " + detail::str(lam));
    if (holding != 1 || c.k_lambda_zero > 0) continue;
    const Classification cl = classify_counts(c);
    const int idx = *cl.index;
    const Verdict want = idx > 0 ? Verdict::PointSpectrum : idx < 0 ? Verdict::ResidualSpectrum : Verdict::Resolvent;
    t.expect(cl.verdict == want, "index sign disagrees with verdict for " + w.to_string());
  }
  return {8, "partition exhaustive and exclusive", t.ok(), t.summary()};
}

inline CheckResult check_bounded_resolvent(const RootConfig& cfg) {
  detail::Tally t;
  const RationalSymbol w = parse_symbol("(z^4+3z+1)/(z^2-1)");
  const ClassifiedGrid inner = classify_grid(w, GridSpec{-6, 6, -6, 6, 128, 128}, cfg, 0);
  const auto white = std::count_if(inner.cells.begin(), inner.cells.end(),
                                   [](const GridCell& c) { return c.verdict == Verdict::Resolvent; });
  t.expect(white > 0, "no resolvent cells in [-6,6]^2");
  const GridSpec outer_spec{-60, 60, -60, 60, 128, 128};
  const ClassifiedGrid outer = classify_grid(w, outer_spec, cfg, 0);
  int ring_white = 0;
  for (int r = 0; r < 128; ++r)
    for (int c = 0; c < 128; ++c)
      if ((r == 0 || r == 127 || c == 0 || c == 127) && outer.at(r, c).verdict == Verdict::Resolvent) ++ring_white;
  t.expect(ring_white == 0, std::to_string(ring_white) + " resolvent cells on the [-60,60]^2 ring");
  return {9, "bounded resolvent", t.ok(), t.summary()};
}

/// One-pixel grids at lambda = 0 for 1/z^m (index m) and z^m (index -m),
/// compared byte for byte with hand-built PPMs.
inline CheckResult check_rendering(const RootConfig& cfg) {
  detail::Tally t;
  struct Case {
    const char* symbol;
    int index;
    std::array<unsigned char, 3> rgb;
  };
  const Case cases[] = {{"1/z^2", 2, {255, 0, 0}},   {"1/z", 1, {0, 0, 255}},   {"z", -1, {0, 255, 255}},
                        {"z^2", -2, {255, 0, 255}}, {"z^3", -3, {255, 255, 0}}, {"z^4", -4, {0, 255, 0}}};
  for (const Case& c : cases) {
    const ClassifiedGrid g = classify_grid(parse_symbol(c.symbol), GridSpec{-0.01, 0.01, -0.01, 0.01, 1, 1}, cfg);
    t.expect(g.cells[0].index == c.index, std::string(c.symbol) + " index mismatch");
    std::string golden = "P6\n1 1\n255\n";
    for (unsigned char b : c.rgb) golden.push_back(static_cast<char>(b));
    t.expect(render_ppm(g) == golden, std::string(c.symbol) + " pixel mismatch");
  }
  return {10, "index color rendering", t.ok(), t.summary()};
}

struct Check {
  int id;
  std::function<CheckResult(const RootConfig&)> run;
};

inline const std::vector<Check>& all_checks() {
  static const std::vector<Check> checks{
      {1, check_line_symbol},  {2, check_parabola},          {3, check_disconnected}, {4, check_trichotomy},
      {5, check_half_line_parabola}, {6, check_index_oracle}, {7, check_kernel_codim}, {8, check_partition},
      {9, check_bounded_resolvent}, {10, check_rendering}};
  return checks;
}

/// Runs one check; library errors count as failures.
inline CheckResult run_check(const Check& c, const RootConfig& cfg) {
  try {
    return c.run(cfg);
  } catch (const std::exception& e) {
    return {c.id, "check " + std::to_string(c.id), false, std::string("exception: ") + e.what()};
  }
}

/// Runs the checks with the given ids (all when empty).
inline std::vector<CheckResult> run(const RootConfig& cfg = {}, const std::vector<int>& only = {}) {
  std::vector<CheckResult> out;
  for (const Check& c : all_checks())
    if (only.empty() || std::find(only.begin(), only.end(), c.id) != only.end()) out.push_back(run_check(c, cfg));
  return out;
}

inline std::string format_line(const CheckResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.detail;
}

inline nlohmann::json to_json(const std::vector<CheckResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  int passed = 0;
  for (const CheckResult& r : results) {
    passed += r.passed;
    arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  return {{"checks", arr}, {"passed", passed}, {"failed", static_cast<int>(results.size()) - passed}};
}

}  // namespace toeplitz::selftest

#endif  // TOEPLITZ_SELFTEST_HPP
