#ifndef TOEPLITZ_CURVE_HPP
#define TOEPLITZ_CURVE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <vector>

#include "format.hpp"
#include "roots.hpp"
#include "spectral.hpp"
#include "symbol.hpp"

namespace toeplitz {

struct CurveSample {
  double theta = 0.0;  // in [0, 2pi)
  cplx value;
  bool clipped = false;
};

/// Pieces of omega(T), split at poles on the circle and at clip events.
struct CurvePolyline {
  std::vector<std::vector<CurveSample>> segments;

  std::size_t sample_count() const {
    std::size_t n = 0;
    for (const auto& s : segments) n += s.size();
    return n;
  }
};

struct CurveOptions {
  int n_base = 512;
  double clip_modulus = 1e6;
  double theta_guard = 1e-8;
  /// Refinement distance as a fraction of the bounding-box diagonal of the
  /// unclipped base samples.
  double refine_fraction = 1e-2;
  double theta_min = 1e-10;
  std::size_t max_samples = 400000;
  RootConfig roots{};
};

/// Evaluates omega(e^{i theta}) with q in product form. Factors for poles on
/// the circle use e^{it} - e^{ip} = 2i sin((t-p)/2) e^{i(t+p)/2}, which keeps
/// full relative accuracy next to the pole.
class CircleEvaluator {
 public:
  explicit CircleEvaluator(const RationalSymbol& w, const RootConfig& cfg = {}) : s_(w.numerator()) {
    const RootSet poles = w.poles(cfg);
    lead_ = w.denominator().leading();
    for (const Root& r : poles.roots) {
      if (r.location == CircleLocation::OnCircle) {
        double phi = std::arg(r.value);
        if (phi < 0.0) phi += 2.0 * std::numbers::pi;
        circle_poles_.push_back({phi, r.multiplicity});
      } else {
        other_poles_.push_back(r);
      }
    }
    std::sort(circle_poles_.begin(), circle_poles_.end(), [](const auto& a, const auto& b) { return a.arg < b.arg; });
  }

  struct CirclePole {
    double arg;
    int multiplicity;
  };

  const std::vector<CirclePole>& circle_poles() const noexcept { return circle_poles_; }

  /// nullopt exactly at a pole.
  std::optional<cplx> operator()(double theta) const {
    const cplx z = std::polar(1.0, theta);
    cplx qz = lead_;
    for (const auto& p : circle_poles_) {
      const cplx f = cplx{0.0, 2.0 * std::sin(0.5 * (theta - p.arg))} * std::polar(1.0, 0.5 * (theta + p.arg));
      for (int m = 0; m < p.multiplicity; ++m) qz *= f;
    }
    for (const Root& r : other_poles_)
      for (int m = 0; m < r.multiplicity; ++m) qz *= (z - r.value);
    if (qz == cplx{}) return std::nullopt;
    return eval(s_, z) / qz;
  }

 private:
  Polynomial s_;
  cplx lead_{1.0, 0.0};
  std::vector<CirclePole> circle_poles_;
  std::vector<Root> other_poles_;
};

/// Samples omega(T) on a uniform theta grid, refined by bisection where
/// consecutive values are farther apart than the refinement distance. Beyond
/// the bounding box of the base samples that distance scales with |value|.
/// Parameter intervals stop theta_guard short of every pole on the circle;
/// samples with |value| > clip_modulus are flagged and end a segment.
inline CurvePolyline sample_curve(const RationalSymbol& w, const CurveOptions& opt) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const int n_base = std::max(opt.n_base, 16);
  const CircleEvaluator f(w, opt.roots);

  struct Raw {
    double theta;
    cplx value;
    bool clipped;
  };
  auto sample = [&](double theta) {
    const auto v = f(theta);
    if (!v) return Raw{theta, cplx{std::numeric_limits<double>::infinity(), 0.0}, true};
    return Raw{theta, *v, !(std::abs(*v) <= opt.clip_modulus)};
  };

  // parameter intervals
  std::vector<std::pair<double, double>> intervals;
  const auto& poles = f.circle_poles();
  if (poles.empty()) {
    intervals.emplace_back(0.0, two_pi);
  } else {
    for (std::size_t i = 0; i < poles.size(); ++i) {
      const double lo = poles[i].arg + opt.theta_guard;
      const double hi = (i + 1 < poles.size() ? poles[i + 1].arg : poles[0].arg + two_pi) - opt.theta_guard;
      if (hi > lo) intervals.emplace_back(lo, hi);
    }
  }

  std::vector<std::vector<Raw>> runs;
  const double step = two_pi / n_base;
  for (const auto& [lo, hi] : intervals) {
    std::vector<Raw> run{sample(lo)};
    for (long j = static_cast<long>(std::floor(lo / step)) + 1; j * step < hi; ++j) run.push_back(sample(j * step));
    run.push_back(sample(hi));
    runs.push_back(std::move(run));
  }

  double re_lo = std::numeric_limits<double>::infinity(), re_hi = -re_lo, im_lo = re_lo, im_hi = -re_lo;
  for (const auto& run : runs)
    for (const Raw& r : run)
      if (!r.clipped) {
        re_lo = std::min(re_lo, r.value.real());
        re_hi = std::max(re_hi, r.value.real());
        im_lo = std::min(im_lo, r.value.imag());
        im_hi = std::max(im_hi, r.value.imag());
      }
  const double diag = re_lo <= re_hi ? std::hypot(re_hi - re_lo, im_hi - im_lo) : 0.0;
  const double refine_dist = diag > 0.0 ? opt.refine_fraction * diag : std::numeric_limits<double>::infinity();

  std::size_t budget = opt.max_samples;
  for (const auto& run : runs) budget -= std::min(budget, run.size());

  CurvePolyline out;
  for (const auto& run : runs) {
    // depth-first bisection, emitting samples in theta order
    std::vector<Raw> refined{run.front()};
    for (std::size_t k = 1; k < run.size(); ++k) {
      std::vector<Raw> stack{run[k]};
      while (!stack.empty()) {
        const Raw& a = refined.back();
        const Raw b = stack.back();
        const double gap = b.theta - a.theta;
        bool split = false;
        if (gap > opt.theta_min && budget > 0) {
          if (!a.clipped && !b.clipped) {
            // relative past the base bounding box, so unbounded branches
            // cost O(log clip_modulus) samples
            const double local = std::min(std::abs(a.value), std::abs(b.value));
            split = std::abs(a.value - b.value) > refine_dist * std::max(1.0, local / diag);
          }
          else
            split = a.clipped != b.clipped;
        }
        if (split) {
          stack.push_back(sample(a.theta + 0.5 * gap));
          --budget;
        } else {
          refined.push_back(b);
          stack.pop_back();
        }
      }
    }

    std::vector<CurveSample> seg;
    const Raw* prev = nullptr;
    auto to_sample = [&](const Raw& r) {
      double t = std::fmod(r.theta, two_pi);
      if (t < 0.0) t += two_pi;
      return CurveSample{t, r.value, r.clipped};
    };
    for (const Raw& r : refined) {
      if (!r.clipped) {
        if (seg.empty() && prev && prev->clipped && std::isfinite(prev->value.real())) seg.push_back(to_sample(*prev));
        seg.push_back(to_sample(r));
      } else if (!seg.empty()) {
        if (std::isfinite(r.value.real())) seg.push_back(to_sample(r));
        out.segments.push_back(std::move(seg));
        seg.clear();
      }
      prev = &r;
    }
    if (!seg.empty()) out.segments.push_back(std::move(seg));
  }
  return out;
}

inline CurvePolyline sample_curve(const RationalSymbol& w, int n_base = 512, double clip_modulus = 1e6) {
  CurveOptions opt;
  opt.n_base = n_base;
  opt.clip_modulus = clip_modulus;
  return sample_curve(w, opt);
}

/// Root-modulus distance of lambda from omega(T): min | |z| - 1 | over the
/// roots of lambda*q - s. Infinite when the pencil is a nonzero constant.
inline double essential_distance(const RationalSymbol& w, cplx lam, const RootConfig& cfg = {}) {
  const Polynomial p = axpy_lambda(w.denominator(), w.numerator(), lam, cfg.tol_deflate);
  if (p.is_zero()) return 0.0;
  if (p.degree() == 0) return std::numeric_limits<double>::infinity();
  double d = std::numeric_limits<double>::infinity();
  for (const Root& r : find_roots(p, cfg).roots) d = std::min(d, std::abs(std::abs(r.value) - 1.0));
  return d;
}

/// Residuals of the real system describing lambda = u + iv = omega(x + iy)
/// on the circle:
///   q1 u - q2 v - s1,  q2 u + q1 v - s2,  x^2 + y^2 - 1
/// where q(x+iy) = q1 + i q2 and s(x+iy) = s1 + i s2.
inline std::array<double, 3> implicit_system_residual(const RationalSymbol& w, double u, double v, double x, double y) {
  const cplx z{x, y};
  const cplx qz = eval(w.denominator(), z);
  const cplx sz = eval(w.numerator(), z);
  const double q1 = qz.real(), q2 = qz.imag(), s1 = sz.real(), s2 = sz.imag();
  return {q1 * u - q2 * v - s1, q2 * u + q1 * v - s2, x * x + y * y - 1.0};
}

/// CSV with header "theta,re,im,clipped"; a blank line separates segments.
inline void write_curve_csv(std::ostream& os, const CurvePolyline& curve) {
  os << "theta,re,im,clipped\n";
  bool first = true;
  for (const auto& seg : curve.segments) {
    if (!first) os << '\n';
    first = false;
    for (const CurveSample& s : seg)
      os << format_double(s.theta) << ',' << format_double(s.value.real()) << ',' << format_double(s.value.imag()) << ','
         << (s.clipped ? 1 : 0) << '\n';
  }
}

}  // namespace toeplitz

#endif  // TOEPLITZ_CURVE_HPP
