#ifndef TOEPLITZ_POLY_HPP
#define TOEPLITZ_POLY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace toeplitz {

using cplx = std::complex<double>;

/// Relative threshold below which leading coefficients of lambda*q - s are
/// treated as cancelled.
inline constexpr double kDefaultTolDeflate = 1e-10;

/// Dense polynomial with complex coefficients in ascending order:
/// coeffs()[k] multiplies z^k.
///
/// Exactly-zero leading coefficients are stripped on construction, so the
/// leading coefficient is nonzero unless the polynomial is zero (empty
/// coefficient vector). Near-zero leading terms are only removed through
/// trimmed().
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { strip_exact(); }

  Polynomial(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { strip_exact(); }

  static Polynomial constant(cplx c) { return Polynomial(std::vector<cplx>{c}); }

  static Polynomial monomial(std::size_t degree, cplx c = 1.0) {
    std::vector<cplx> v(degree + 1, cplx{});
    v[degree] = c;
    return Polynomial(std::move(v));
  }

  /// c * prod (z - r_k)
  static Polynomial from_roots(std::span<const cplx> roots, cplx c = 1.0) {
    std::vector<cplx> v{c};
    for (const cplx& r : roots) {
      std::vector<cplx> next(v.size() + 1, cplx{});
      for (std::size_t k = 0; k < v.size(); ++k) {
        next[k + 1] += v[k];
        next[k] -= r * v[k];
      }
      v = std::move(next);
    }
    return Polynomial(std::move(v));
  }

  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  cplx leading() const noexcept { return coeffs_.empty() ? cplx{} : coeffs_.back(); }

  /// Coefficient of z^k, zero beyond the degree.
  cplx operator[](std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : cplx{}; }

  double norm_inf() const noexcept {
    double m = 0.0;
    for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Drops leading coefficients whose modulus is <= abs_tol.
  Polynomial trimmed(double abs_tol) const {
    std::vector<cplx> v = coeffs_;
    while (!v.empty() && std::abs(v.back()) <= abs_tol) v.pop_back();
    return Polynomial(std::move(v));
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    std::vector<cplx> v = coeffs_;
    const cplx lead = v.back();
    for (cplx& c : v) c /= lead;
    v.back() = 1.0;
    return Polynomial(std::move(v));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void strip_exact() {
    while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
  }

  std::vector<cplx> coeffs_;
};

inline Polynomial add(const Polynomial& p, const Polynomial& q) {
  std::vector<cplx> v(std::max(p.size(), q.size()), cplx{});
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = p[k] + q[k];
  return Polynomial(std::move(v));
}

inline Polynomial sub(const Polynomial& p, const Polynomial& q) {
  std::vector<cplx> v(std::max(p.size(), q.size()), cplx{});
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = p[k] - q[k];
  return Polynomial(std::move(v));
}

inline Polynomial scale(const Polynomial& p, cplx c) {
  std::vector<cplx> v = p.coeffs();
  for (cplx& a : v) a *= c;
  return Polynomial(std::move(v));
}

inline Polynomial mul(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<cplx> v(p.size() + q.size() - 1, cplx{});
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) v[i + j] += p.coeffs()[i] * q.coeffs()[j];
  return Polynomial(std::move(v));
}

inline Polynomial operator+(const Polynomial& p, const Polynomial& q) { return add(p, q); }
inline Polynomial operator-(const Polynomial& p, const Polynomial& q) { return sub(p, q); }
inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return mul(p, q); }
inline Polynomial operator*(cplx c, const Polynomial& p) { return scale(p, c); }

inline Polynomial pow(const Polynomial& p, unsigned n) {
  Polynomial r = Polynomial::constant(1.0);
  for (unsigned k = 0; k < n; ++k) r = mul(r, p);
  return r;
}

/// lambda*q - s with leading terms of modulus
/// <= tol_deflate * max(1, |lambda|*||q||, ||s||) removed. A cancelled
/// leading term is how the degree drop at lambda = b/a shows up.
inline Polynomial axpy_lambda(const Polynomial& q, const Polynomial& s, cplx lam,
                              double tol_deflate = kDefaultTolDeflate) {
  const double scale_ref = std::max({1.0, std::abs(lam) * q.norm_inf(), s.norm_inf()});
  return sub(scale(q, lam), s).trimmed(tol_deflate * scale_ref);
}

inline Polynomial derivative(const Polynomial& p) {
  if (p.degree() < 1) return {};
  std::vector<cplx> v(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) v[k - 1] = p.coeffs()[k] * static_cast<double>(k);
  return Polynomial(std::move(v));
}

/// Horner evaluation.
inline cplx eval(const Polynomial& p, cplx z) {
  cplx acc{};
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

struct DivResult {
  Polynomial quotient;
  Polynomial remainder;
};

/// Long division p = quotient * d + remainder with deg(remainder) < deg(d).
inline DivResult divide(const Polynomial& p, const Polynomial& d) {
  if (d.is_zero()) throw DivisionByZero();
  if (p.degree() < d.degree()) return {Polynomial{}, p};
  std::vector<cplx> rem = p.coeffs();
  const std::size_t nd = d.size();
  std::vector<cplx> quot(p.size() - nd + 1, cplx{});
  const cplx lead = d.leading();
  for (std::size_t k = quot.size(); k-- > 0;) {
    const cplx c = rem[k + nd - 1] / lead;
    quot[k] = c;
    for (std::size_t j = 0; j < nd; ++j) rem[k + j] -= c * d.coeffs()[j];
    rem[k + nd - 1] = cplx{};
  }
  rem.resize(nd - 1);
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

/// Monic approximate GCD by Euclidean remainders. Each remainder has its
/// leading terms trimmed relative to the size of the step that produced it;
/// a remainder that vanishes entirely ends the sequence. Returns the constant
/// 1 when the inputs are coprime to tolerance.
inline Polynomial gcd_numeric(const Polynomial& p, const Polynomial& q, double tol = 1e-8) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd_numeric: both inputs are zero");
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();

  Polynomial a = scale(p, 1.0 / p.norm_inf());
  Polynomial b = scale(q, 1.0 / q.norm_inf());
  if (a.degree() < b.degree()) std::swap(a, b);

  while (b.degree() > 0) {
    auto [quot, rem] = divide(a, b);
    const double step_scale = std::max(a.norm_inf(), quot.norm_inf() * b.norm_inf());
    rem = rem.trimmed(tol * step_scale);
    if (rem.is_zero()) return b.monic();
    a = std::move(b);
    b = scale(rem, 1.0 / rem.norm_inf());
  }
  return Polynomial::constant(1.0);
}

/// Taylor coefficients of p about c: t[j] = p^(j)(c) / j!.
inline std::vector<cplx> taylor_coefficients(const Polynomial& p, cplx c) {
  std::vector<cplx> t = p.coeffs();
  const std::size_t n = t.size();
  for (std::size_t j = 0; j + 1 < n; ++j)
    for (std::size_t k = n - 1; k > j; --k) t[k - 1] += c * t[k];
  return t;
}

}  // namespace toeplitz

#endif  // TOEPLITZ_POLY_HPP
