#ifndef TOEPLITZ_ROOTS_HPP
#define TOEPLITZ_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"

namespace toeplitz {

enum class CircleLocation { Inside, OnCircle, Outside };

inline std::string_view to_string(CircleLocation loc) {
  switch (loc) {
    case CircleLocation::Inside: return "inside";
    case CircleLocation::OnCircle: return "on_circle";
    case CircleLocation::Outside: return "outside";
  }
  return "?";
}

/// Numerical knobs shared by every root-count based computation.
struct RootConfig {
  double tol_circle = 1e-9;
  double cluster_radius = 1e-7;
  int max_iters = 200;
  double tol_deflate = kDefaultTolDeflate;
  /// Relative Taylor-coefficient bound used to confirm that a loose group of
  /// approximations is one multiple root (see find_roots).
  double tol_multiple = 1e-13;

  friend bool operator==(const RootConfig&, const RootConfig&) = default;
};

struct Root {
  cplx value;
  int multiplicity = 1;
  CircleLocation location = CircleLocation::Inside;
};

struct RootSet {
  std::vector<Root> roots;
  int source_degree = 0;

  int count(CircleLocation loc) const {
    int n = 0;
    for (const Root& r : roots)
      if (r.location == loc) n += r.multiplicity;
    return n;
  }

  int total_multiplicity() const {
    int n = 0;
    for (const Root& r : roots) n += r.multiplicity;
    return n;
  }
};

inline CircleLocation classify_location(cplx z, double tol_circle) {
  const double d = std::abs(z) - 1.0;
  if (std::abs(d) <= tol_circle) return CircleLocation::OnCircle;
  return d < 0.0 ? CircleLocation::Inside : CircleLocation::Outside;
}

/// Same test against the circle |z| = radius.
inline CircleLocation classify_location(cplx z, double tol, double radius) {
  return classify_location(z / radius, tol / radius);
}

namespace detail {

/// Newton correction p(z)/p'(z) together with a backward-error flag. For
/// |z| > 1 the reversed polynomial in 1/z is used so that large roots do not
/// overflow the Horner sums.
struct NewtonStep {
  cplx ratio;
  double rel_residual;  // |p(z)| / sum |a_k| |z|^k
  bool exact_root;
};

inline NewtonStep newton_step(std::span<const cplx> a, cplx z) {
  const std::size_t n = a.size() - 1;
  if (std::abs(z) <= 1.0) {
    cplx p{}, dp{};
    double bound = 0.0;
    const double az = std::abs(z);
    for (std::size_t k = n + 1; k-- > 0;) {
      dp = dp * z + p;
      p = p * z + a[k];
      bound = bound * az + std::abs(a[k]);
    }
    if (p == cplx{}) return {cplx{}, 0.0, true};
    return {p / dp, std::abs(p) / bound, false};
  }
  const cplx w = 1.0 / z;
  const double aw = std::abs(w);
  cplx r{}, dr{};
  double bound = 0.0;
  // reversed coefficients: b_k = a_{n-k}
  for (std::size_t k = 0; k <= n; ++k) {
    dr = dr * w + r;
    r = r * w + a[k];
    bound = bound * aw + std::abs(a[k]);
  }
  if (r == cplx{}) return {cplx{}, 0.0, true};
  // p(z) = z^n r(w), p'(z) = z^(n-1) (n r(w) - w r'(w))
  const cplx ratio = z / (static_cast<double>(n) - w * dr / r);
  return {ratio, std::abs(r) / bound, false};
}

/// Starting points from the upper convex hull of (k, log|a_k|): each hull
/// edge i->j contributes j-i points on a circle of radius
/// (|a_i|/|a_j|)^(1/(j-i)), rotated by a golden-angle offset per edge.
inline std::vector<cplx> initial_guesses(std::span<const cplx> a) {
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<int> idx;
  std::vector<double> lg(a.size(), -std::numeric_limits<double>::infinity());
  for (int k = 0; k <= n; ++k)
    if (a[k] != cplx{}) lg[k] = std::log(std::abs(a[k]));
  for (int k = 0; k <= n; ++k) {
    if (a[k] == cplx{}) continue;
    while (idx.size() >= 2) {
      const int i = idx[idx.size() - 2];
      const int j = idx.back();
      // drop j if it lies on or below the segment i -> k
      const double cross = (lg[j] - lg[i]) * (k - i) - (lg[k] - lg[i]) * (j - i);
      if (cross <= 0.0)
        idx.pop_back();
      else
        break;
    }
    idx.push_back(k);
  }

  constexpr double golden = std::numbers::pi * (3.0 - 2.2360679774997896964);
  std::vector<cplx> z;
  z.reserve(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e + 1 < idx.size(); ++e) {
    const int i = idx[e], j = idx[e + 1];
    const int cnt = j - i;
    const double radius = std::exp((lg[i] - lg[j]) / cnt);
    for (int l = 0; l < cnt; ++l) {
      const double phase = 2.0 * std::numbers::pi * l / cnt + golden * static_cast<double>(e + 1) + 0.4;
      z.push_back(std::polar(radius, phase));
    }
  }
  return z;
}

struct Cluster {
  cplx sum{};
  int count = 0;
  cplx mean() const { return sum / static_cast<double>(count); }
};

/// True when the Taylor coefficients of p at c of order < m are all
/// negligible, i.e. c is numerically a root of multiplicity >= m.
inline bool is_multiple_root(const Polynomial& p, cplx c, int m, double tol) {
  const std::vector<cplx> t = taylor_coefficients(p, c);
  const auto& a = p.coeffs();
  const double ac = std::abs(c);
  for (int j = 0; j < m && j < static_cast<int>(t.size()); ++j) {
    // sum_k |a_k| C(k,j) |c|^(k-j)
    double bound = 0.0;
    for (std::size_t k = a.size(); k-- > static_cast<std::size_t>(j);) {
      double binom = 1.0;
      for (int r = 0; r < j; ++r) binom = binom * static_cast<double>(k - static_cast<std::size_t>(r)) / (r + 1);
      bound += std::abs(a[k]) * binom * std::pow(ac, static_cast<double>(k) - j);
    }
    if (std::abs(t[static_cast<std::size_t>(j)]) > tol * bound) return false;
  }
  return true;
}

/// Newton iteration on p^(m-1), which has a simple root where p has an
/// m-fold one. Steps are taken while they reduce |p^(m-1)|.
inline cplx refine_multiple_root(const Polynomial& p, cplx c, int m) {
  Polynomial d = p;
  for (int k = 1; k < m; ++k) d = derivative(d);
  const Polynomial dd = derivative(d);
  double res = std::abs(eval(d, c));
  for (int it = 0; it < 8 && res > 0.0; ++it) {
    const cplx slope = eval(dd, c);
    if (slope == cplx{}) break;
    const cplx cand = c - eval(d, c) / slope;
    const double cand_res = std::abs(eval(d, cand));
    if (!(cand_res < res)) break;
    c = cand;
    res = cand_res;
  }
  return c;
}

}  // namespace detail

/// All roots of p with multiplicities, labelled by position relative to the
/// unit circle.
///
/// Exact zero roots are split off first. The rest come from Aberth-Ehrlich
/// simultaneous iteration, followed by at most two guarded Newton steps per
/// approximation. Approximations closer than cluster_radius (scaled by
/// max(1,|z|)) are merged; the center of a merged group is refined by Newton
/// on the (m-1)-th derivative. Since an m-fold root only resolves
/// to about eps^(1/m), groups within a looser 1e-2 window are also merged
/// when the Taylor coefficients at their mean confirm a root of that
/// multiplicity. The iteration has no random input, so results are
/// reproducible.
inline RootSet find_roots(const Polynomial& p, const RootConfig& cfg = {}) {
  if (p.is_zero()) throw ZeroPolynomial();
  RootSet out;
  out.source_degree = p.degree();
  if (p.degree() == 0) return out;

  const auto& coeffs = p.coeffs();
  std::size_t zeros = 0;
  while (coeffs[zeros] == cplx{}) ++zeros;
  if (zeros > 0) out.roots.push_back({cplx{}, static_cast<int>(zeros), classify_location(cplx{}, cfg.tol_circle)});

  const Polynomial reduced(std::vector<cplx>(coeffs.begin() + static_cast<std::ptrdiff_t>(zeros), coeffs.end()));
  const int n = reduced.degree();
  if (n == 0) return out;
  const auto& a = reduced.coeffs();

  std::vector<cplx> z;
  if (n == 1) {
    z.push_back(-a[0] / a[1]);
  } else {
    z = detail::initial_guesses(a);
    std::vector<bool> done(z.size(), false);
    std::vector<double> residual(z.size(), 1.0);
    const double eps = std::numeric_limits<double>::epsilon();
    const double stop_residual = 4.0 * (n + 1) * eps;
    int iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
      bool all_done = true;
      for (std::size_t i = 0; i < z.size(); ++i) {
        if (done[i]) continue;
        const detail::NewtonStep st = detail::newton_step(a, z[i]);
        residual[i] = st.rel_residual;
        if (st.exact_root || st.rel_residual <= stop_residual) {
          done[i] = true;
          continue;
        }
        cplx sum{};
        for (std::size_t j = 0; j < z.size(); ++j)
          if (j != i) sum += 1.0 / (z[i] - z[j]);
        const cplx corr = st.ratio / (1.0 - st.ratio * sum);
        if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) {
          // coincident iterates; nudge deterministically
          z[i] += std::polar(1e-8 * std::max(1.0, std::abs(z[i])), 0.7 * static_cast<double>(i + 1));
          all_done = false;
          continue;
        }
        z[i] -= corr;
        if (std::abs(corr) <= eps * std::abs(z[i]))
          done[i] = true;
        else
          all_done = false;
      }
      if (all_done) break;
    }
    if (std::find(done.begin(), done.end(), false) != done.end()) {
      for (std::size_t i = 0; i < z.size(); ++i) residual[i] = detail::newton_step(a, z[i]).rel_residual;
      throw NonConvergence(iter, residual);
    }
    // guarded Newton polish
    for (cplx& r : z) {
      for (int k = 0; k < 2; ++k) {
        const detail::NewtonStep st = detail::newton_step(a, r);
        if (st.exact_root || st.rel_residual == 0.0) break;
        const cplx cand = r - st.ratio;
        if (!std::isfinite(cand.real()) || !std::isfinite(cand.imag())) break;
        if (detail::newton_step(a, cand).rel_residual < st.rel_residual)
          r = cand;
        else
          break;
      }
    }
  }

  // cluster_radius union
  std::vector<detail::Cluster> clusters;
  std::vector<std::size_t> parent(z.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const double radius = cfg.cluster_radius * std::max({1.0, std::abs(z[i]), std::abs(z[j])});
      if (std::abs(z[i] - z[j]) <= radius) parent[find(i)] = find(j);
    }
  {
    std::vector<std::ptrdiff_t> slot(z.size(), -1);
    for (std::size_t i = 0; i < z.size(); ++i) {
      const std::size_t r = find(i);
      if (slot[r] < 0) {
        slot[r] = static_cast<std::ptrdiff_t>(clusters.size());
        clusters.push_back({});
      }
      auto& c = clusters[static_cast<std::size_t>(slot[r])];
      c.sum += z[i];
      c.count += 1;
    }
  }

  std::vector<cplx> centers;
  for (const auto& c : clusters) {
    const cplx m = c.mean();
    const cplx r = c.count > 1 ? detail::refine_multiple_root(reduced, m, c.count) : m;
    const double radius = cfg.cluster_radius * std::max(1.0, std::abs(m));
    centers.push_back(std::abs(r - m) <= radius ? r : m);
  }

  // multiple-root consolidation over loose groups
  if (clusters.size() > 1) {
    constexpr double loose = 1e-2;
    std::vector<std::size_t> group(clusters.size());
    std::iota(group.begin(), group.end(), std::size_t{0});
    auto gfind = [&](std::size_t i) {
      while (group[i] != i) i = group[i] = group[group[i]];
      return i;
    };
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const cplx ci = centers[i], cj = centers[j];
        if (std::abs(ci - cj) <= loose * std::max({1.0, std::abs(ci), std::abs(cj)})) group[gfind(i)] = gfind(j);
      }
    std::vector<detail::Cluster> merged;
    std::vector<cplx> merged_centers;
    std::vector<bool> used(clusters.size(), false);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      if (used[i]) continue;
      const std::size_t g = gfind(i);
      std::vector<std::size_t> members;
      for (std::size_t j = i; j < clusters.size(); ++j)
        if (!used[j] && gfind(j) == g) members.push_back(j);
      detail::Cluster all;
      for (std::size_t m : members) {
        all.sum += clusters[m].sum;
        all.count += clusters[m].count;
      }
      cplx center{};
      bool accept = false;
      if (members.size() > 1) {
        center = detail::refine_multiple_root(reduced, all.mean(), all.count);
        accept = std::abs(center - all.mean()) <= loose * std::max(1.0, std::abs(all.mean())) &&
                 detail::is_multiple_root(reduced, center, all.count, cfg.tol_multiple);
      }
      if (accept) {
        merged.push_back(all);
        merged_centers.push_back(center);
        for (std::size_t m : members) used[m] = true;
      } else {
        merged.push_back(clusters[i]);
        merged_centers.push_back(centers[i]);
        used[i] = true;
      }
    }
    clusters = std::move(merged);
    centers = std::move(merged_centers);
  }

  for (std::size_t i = 0; i < clusters.size(); ++i)
    out.roots.push_back({centers[i], clusters[i].count, classify_location(centers[i], cfg.tol_circle)});
  return out;
}

/// Number of roots of p in |z| < r from the argument principle,
///   (1/2pi) * integral over |z| = r of Re[z p'(z)/p(z)] dtheta,
/// with the trapezoidal rule on n_samples nodes. Throws ContourTooCloseToRoot
/// when the sum is more than 0.25 away from an integer.
inline int count_roots_in_disk_argument_principle(const Polynomial& p, double r, int n_samples) {
  if (p.is_zero()) throw ZeroPolynomial();
  if (p.degree() == 0) return 0;
  const Polynomial dp = derivative(p);
  double acc = 0.0;
  for (int k = 0; k < n_samples; ++k) {
    const cplx z = std::polar(r, 2.0 * std::numbers::pi * k / n_samples);
    const cplx pz = eval(p, z);
    if (pz == cplx{}) throw ContourTooCloseToRoot(std::numeric_limits<double>::infinity());
    acc += (z * eval(dp, z) / pz).real();
  }
  const double winding = acc / n_samples;
  const double nearest = std::round(winding);
  if (!std::isfinite(winding) || std::abs(winding - nearest) > 0.25) throw ContourTooCloseToRoot(winding);
  return static_cast<int>(nearest);
}

}  // namespace toeplitz

#endif  // TOEPLITZ_ROOTS_HPP
