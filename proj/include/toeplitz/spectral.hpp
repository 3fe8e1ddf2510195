#ifndef TOEPLITZ_SPECTRAL_HPP
#define TOEPLITZ_SPECTRAL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "errors.hpp"
#include "poly.hpp"
#include "roots.hpp"
#include "symbol.hpp"

namespace toeplitz {

/// Root counts that decide the spectral part of lambda:
///   k_q              roots of q in the closed disk
///   k_lambda_minus   roots of lambda*q - s in the open disk
///   k_lambda_zero    roots of lambda*q - s on the circle
/// all with multiplicity. identically_zero marks lambda*q - s == 0, which
/// only happens for a constant symbol evaluated at its own value.
struct SpectralCounts {
  int k_q = 0;
  int k_lambda_minus = 0;
  int k_lambda_zero = 0;
  bool identically_zero = false;

  friend bool operator==(const SpectralCounts&, const SpectralCounts&) = default;
};

enum class Verdict { Resolvent, PointSpectrum, ResidualSpectrum, ContinuousSpectrum, Unknown };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Resolvent: return "resolvent";
    case Verdict::PointSpectrum: return "point";
    case Verdict::ResidualSpectrum: return "residual";
    case Verdict::ContinuousSpectrum: return "continuous";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

struct Classification {
  Verdict verdict = Verdict::Unknown;
  bool essential = false;
  std::optional<int> index;  // present iff not essential
  SpectralCounts counts;
};

/// Pencil polynomial lambda*q - s after deflation, with its roots.
struct PencilAnalysis {
  Polynomial pencil;
  RootSet roots;  // empty when pencil is zero or constant
  SpectralCounts counts;
};

inline PencilAnalysis analyze_pencil(const RationalSymbol& w, cplx lam, const RootConfig& cfg = {}) {
  PencilAnalysis a;
  const RootSet poles = w.poles(cfg);
  a.counts.k_q = poles.count(CircleLocation::Inside) + poles.count(CircleLocation::OnCircle);
  a.pencil = axpy_lambda(w.denominator(), w.numerator(), lam, cfg.tol_deflate);
  if (a.pencil.is_zero()) {
    a.counts.identically_zero = true;
    return a;
  }
  a.roots = find_roots(a.pencil, cfg);
  a.counts.k_lambda_minus = a.roots.count(CircleLocation::Inside);
  a.counts.k_lambda_zero = a.roots.count(CircleLocation::OnCircle);
  return a;
}

inline SpectralCounts counts(const RationalSymbol& w, cplx lam, const RootConfig& cfg = {}) {
  return analyze_pencil(w, lam, cfg).counts;
}

/// The four set conditions for resolvent / point / residual / continuous,
/// evaluated independently of each other.
inline std::array<bool, 4> partition_conditions(const SpectralCounts& c) {
  const int kq = c.k_q, km = c.k_lambda_minus, k0 = c.k_lambda_zero;
  return {
      k0 == 0 && kq == km,
      kq > km + k0,
      kq < km,
      k0 > 0 && km <= kq && kq <= km + k0,
  };
}

inline Classification classify_counts(const SpectralCounts& c) {
  Classification out;
  out.counts = c;
  if (c.identically_zero) {
    // lambda - omega vanishes identically: the operator is zero
    out.verdict = Verdict::PointSpectrum;
    out.essential = true;
    return out;
  }
  const auto cond = partition_conditions(c);
  if (std::count(cond.begin(), cond.end(), true) != 1)
    throw std::logic_error("spectral partition conditions are not mutually exclusive");
  constexpr std::array<Verdict, 4> verdicts{Verdict::Resolvent, Verdict::PointSpectrum, Verdict::ResidualSpectrum,
                                            Verdict::ContinuousSpectrum};
  out.verdict = verdicts[static_cast<std::size_t>(std::find(cond.begin(), cond.end(), true) - cond.begin())];
  out.essential = c.k_lambda_zero > 0;
  if (!out.essential) out.index = c.k_q - c.k_lambda_minus;
  return out;
}

inline Classification classify(const RationalSymbol& w, cplx lam, const RootConfig& cfg = {}) {
  return classify_counts(counts(w, lam, cfg));
}

/// Index of lambda - T_omega, or nullopt when it is not Fredholm
/// (lambda*q - s has a root on the circle).
inline std::optional<int> fredholm_index(const RationalSymbol& w, cplx lam, const RootConfig& cfg = {}) {
  const SpectralCounts c = counts(w, lam, cfg);
  if (c.identically_zero || c.k_lambda_zero > 0) return std::nullopt;
  return c.k_q - c.k_lambda_minus;
}

namespace detail {

struct PoleZeroCounts {
  int poles_closed;  // poles in the closed disk
  int zeros_closed;  // zeros in the closed disk
  int zeros_open;    // zeros in the open disk
};

inline PoleZeroCounts pole_zero_counts(const RationalSymbol& w, const RootConfig& cfg) {
  if (w.is_zero()) throw std::invalid_argument("the zero symbol has no finite zero set");
  const RootSet poles = w.poles(cfg);
  const RootSet zeros = find_roots(w.numerator(), cfg);
  return {poles.count(CircleLocation::Inside) + poles.count(CircleLocation::OnCircle),
          zeros.count(CircleLocation::Inside) + zeros.count(CircleLocation::OnCircle),
          zeros.count(CircleLocation::Inside)};
}

}  // namespace detail

/// T_omega injective: #poles in closed disk <= #zeros in closed disk.
inline bool injective_predicate(const RationalSymbol& w, const RootConfig& cfg = {}) {
  const auto c = detail::pole_zero_counts(w, cfg);
  return c.poles_closed <= c.zeros_closed;
}

/// T_omega has dense range: #poles in closed disk >= #zeros in open disk.
inline bool dense_range_predicate(const RationalSymbol& w, const RootConfig& cfg = {}) {
  const auto c = detail::pole_zero_counts(w, cfg);
  return c.poles_closed >= c.zeros_open;
}

struct RatTDiagnostics {
  int kernel_dim = 0;
  int range_closure_codim = 0;
  bool injective = false;
  bool dense_range = false;
  bool sigma_r_empty_hint = false;  // deg s <= deg q
};

/// Kernel dimension and codimension of the range closure for a symbol whose
/// poles all lie on the circle. Throws NotRatT otherwise.
inline RatTDiagnostics rat_t_diagnostics(const RationalSymbol& w, const RootConfig& cfg = {}) {
  if (!w.rat_t(cfg)) throw NotRatT();
  if (w.is_zero()) throw std::invalid_argument("the zero symbol has no finite zero set");
  const CircleFactorization f = circle_factor(w.numerator(), cfg);
  const int deg_q = w.denominator().degree();
  const int deg_minus = f.s_minus.degree();
  const int deg_zero = f.s_zero.degree();
  RatTDiagnostics d;
  d.kernel_dim = std::max(0, deg_q - deg_minus - deg_zero);
  d.range_closure_codim = std::max(0, deg_minus - deg_q);
  d.injective = injective_predicate(w, cfg);
  d.dense_range = dense_range_predicate(w, cfg);
  d.sigma_r_empty_hint = w.proper();
  return d;
}

/// Verdict for a proper symbol with all poles on the circle, decided by the
/// refined description: point spectrum is omega(|z| > 1) plus b/a, residual
/// spectrum is empty, continuous spectrum is where lambda*q - s has a root on
/// the circle and none outside the closed disk. Throws NotProperRatT.
inline Classification proper_rat_t_parts(const RationalSymbol& w, cplx lam, const RootConfig& cfg = {}) {
  if (!w.proper()) throw NotProperRatT("deg s > deg q");
  if (!w.rat_t(cfg)) throw NotProperRatT("a pole lies off the unit circle");

  const Polynomial& q = w.denominator();
  const Polynomial& s = w.numerator();
  const double scale_ref = std::max({1.0, std::abs(lam) * q.norm_inf(), s.norm_inf()});
  const bool at_b_over_a = std::abs(lam * w.leading_a() - w.coefficient_b()) <= cfg.tol_deflate * scale_ref;

  Classification out;
  const int deg_q = q.degree();
  out.counts.k_q = deg_q;
  const Polynomial pencil = axpy_lambda(q, s, lam, cfg.tol_deflate);
  if (pencil.is_zero()) {
    out.counts.identically_zero = true;
    out.verdict = Verdict::PointSpectrum;
    out.essential = true;
    return out;
  }
  const RootSet rs = find_roots(pencil, cfg);
  const int outside = rs.count(CircleLocation::Outside);
  out.counts.k_lambda_minus = rs.count(CircleLocation::Inside);
  out.counts.k_lambda_zero = rs.count(CircleLocation::OnCircle);
  out.essential = out.counts.k_lambda_zero > 0;
  if (at_b_over_a || outside > 0)
    out.verdict = Verdict::PointSpectrum;
  else if (out.essential)
    out.verdict = Verdict::ContinuousSpectrum;
  else
    out.verdict = Verdict::Resolvent;
  if (!out.essential) out.index = deg_q - out.counts.k_lambda_minus;
  return out;
}

}  // namespace toeplitz

#endif  // TOEPLITZ_SPECTRAL_HPP
