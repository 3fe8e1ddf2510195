#ifndef TOEPLITZ_SYMBOL_HPP
#define TOEPLITZ_SYMBOL_HPP

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "format.hpp"
#include "parse.hpp"
#include "poly.hpp"
#include "roots.hpp"

namespace toeplitz {

inline constexpr double kDefaultTolPole = 1e-9;
inline constexpr double kDefaultTolGcd = 1e-8;

/// Rational symbol omega = s/q with s, q coprime and q monic.
///
/// Construction cancels any common factor found by gcd_numeric (recording a
/// note) and caches the root set of q under the default RootConfig.
class RationalSymbol {
 public:
  static RationalSymbol from_polynomials(Polynomial s, Polynomial q, double gcd_tol = kDefaultTolGcd) {
    if (q.is_zero()) throw ZeroDenominator();
    RationalSymbol w;
    if (s.is_zero()) {
      if (q.degree() > 0) w.notes_.push_back("zero numerator: denominator replaced by 1");
      w.s_ = {};
      w.q_ = Polynomial::constant(1.0);
    } else {
      const Polynomial g = gcd_numeric(s, q, gcd_tol);
      if (g.degree() > 0) {
        w.cancelled_ = true;
        w.notes_.push_back("cancelled common factor " + format_polynomial(g));
        s = divide(s, g).quotient;
        q = divide(q, g).quotient;
      }
      const cplx lead = q.leading();
      w.s_ = scale(s, 1.0 / lead);
      w.q_ = q.monic();
    }
    w.pole_roots_ = find_roots(w.q_, RootConfig{});
    return w;
  }

  const Polynomial& numerator() const noexcept { return s_; }
  const Polynomial& denominator() const noexcept { return q_; }

  /// Roots of q under the default configuration.
  const RootSet& pole_roots() const noexcept { return pole_roots_; }

  /// Roots of q under cfg (the cache is reused when cfg is the default).
  RootSet poles(const RootConfig& cfg) const {
    if (cfg == RootConfig{}) return pole_roots_;
    return find_roots(q_, cfg);
  }

  bool cancelled() const noexcept { return cancelled_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }

  bool is_zero() const noexcept { return s_.is_zero(); }
  bool proper() const noexcept { return s_.degree() <= q_.degree(); }
  bool strictly_proper() const noexcept { return s_.degree() < q_.degree(); }

  /// Leading coefficient of q (1 after normalization).
  cplx leading_a() const noexcept { return q_.leading(); }
  /// Coefficient of s at z^deg(q).
  cplx coefficient_b() const noexcept { return s_[static_cast<std::size_t>(q_.degree())]; }

  /// All poles on the unit circle (vacuously true for polynomial symbols).
  bool rat_t(const RootConfig& cfg = {}) const {
    const RootSet p = poles(cfg);
    return p.count(CircleLocation::OnCircle) == p.total_multiplicity();
  }

  /// Printed form; parse_symbol(to_string()) reproduces the symbol.
  std::string to_string() const {
    if (q_.degree() == 0 && q_[0] == cplx{1.0, 0.0}) return format_polynomial(s_);
    return "(" + format_polynomial(s_) + ")/(" + format_polynomial(q_) + ")";
  }

 private:
  RationalSymbol() = default;

  Polynomial s_;
  Polynomial q_;
  RootSet pole_roots_;
  bool cancelled_ = false;
  std::vector<std::string> notes_;
};

inline RationalSymbol parse_symbol(std::string_view text) {
  PolyFraction f = parse_fraction(text);
  return RationalSymbol::from_polynomials(std::move(f.num), std::move(f.den));
}

/// Splitting p = unit * s_minus * s_zero * s_plus by root location.
struct CircleFactorization {
  Polynomial s_minus;
  Polynomial s_zero;
  Polynomial s_plus;
  cplx unit{1.0, 0.0};
};

inline CircleFactorization circle_factor(const Polynomial& p, const RootConfig& cfg = {}) {
  if (p.is_zero()) throw ZeroPolynomial();
  const RootSet rs = find_roots(p, cfg);
  std::vector<cplx> inside, on, outside;
  for (const Root& r : rs.roots) {
    auto& bucket = r.location == CircleLocation::Inside ? inside : r.location == CircleLocation::OnCircle ? on : outside;
    for (int m = 0; m < r.multiplicity; ++m) bucket.push_back(r.value);
  }
  return {Polynomial::from_roots(inside), Polynomial::from_roots(on), Polynomial::from_roots(outside), p.leading()};
}

/// omega(z) = s(z)/q(z), or nullopt at a pole: |q(z)| <= tol_pole * (1 + |s(z)|).
inline std::optional<cplx> evaluate_symbol(const RationalSymbol& w, cplx z, double tol_pole = kDefaultTolPole) {
  const cplx sz = eval(w.numerator(), z);
  const cplx qz = eval(w.denominator(), z);
  if (std::abs(qz) <= tol_pole * (1.0 + std::abs(sz))) return std::nullopt;
  return sz / qz;
}

}  // namespace toeplitz

#endif  // TOEPLITZ_SYMBOL_HPP
