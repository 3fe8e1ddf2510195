#ifndef TOEPLITZ_FORMAT_HPP
#define TOEPLITZ_FORMAT_HPP

#include <charconv>
#include <cmath>
#include <complex>
#include <string>

#include "poly.hpp"

namespace toeplitz {

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double x) {
  if (x == 0.0) return "0";  // also folds -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

/// Complex literal in the symbol grammar: "1.5", "-2i", "(1.5-2i)".
inline std::string format_complex(cplx c) {
  if (c.imag() == 0.0) return format_double(c.real());
  if (c.real() == 0.0) return format_double(c.imag()) + "i";
  std::string s = "(" + format_double(c.real());
  s += c.imag() < 0.0 ? "-" : "+";
  s += format_double(std::abs(c.imag())) + "i)";
  return s;
}

/// Polynomial in z, highest degree first, e.g. "z^3 + 3*z + 1".
inline std::string format_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    cplx c = p[static_cast<std::size_t>(k)];
    if (c == cplx{}) continue;
    const bool negative = (c.imag() == 0.0 && c.real() < 0.0) || (c.real() == 0.0 && c.imag() < 0.0);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (negative) c = -c;
    std::string mono;
    if (k == 1) mono = "z";
    if (k > 1) mono = "z^" + std::to_string(k);
    if (mono.empty()) {
      out += format_complex(c);
    } else if (c == cplx{1.0, 0.0}) {
      out += mono;
    } else {
      out += format_complex(c) + "*" + mono;
    }
    first = false;
  }
  return out;
}

}  // namespace toeplitz

#endif  // TOEPLITZ_FORMAT_HPP
