#ifndef TOEPLITZ_ERRORS_HPP
#define TOEPLITZ_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toeplitz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by the zero polynomial") {}
};

class ZeroPolynomial : public Error {
 public:
  ZeroPolynomial() : Error("the zero polynomial has no finite root set") {}
};

/// Root iteration did not reach the residual bound; carries the final
/// relative residual of every approximation.
class NonConvergence : public Error {
 public:
  NonConvergence(int iterations, std::vector<double> residuals)
      : Error("root finder did not converge after " + std::to_string(iterations) +
              " iterations"),
        iterations_(iterations),
        residuals_(std::move(residuals)) {}

  int iterations() const noexcept { return iterations_; }
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  int iterations_;
  std::vector<double> residuals_;
};

class ContourTooCloseToRoot : public Error {
 public:
  explicit ContourTooCloseToRoot(double winding)
      : Error("contour passes too close to a root (winding sum " + std::to_string(winding) + ")"),
        winding_(winding) {}
  double winding() const noexcept { return winding_; }

 private:
  double winding_;
};

/// Symbol text could not be parsed. position() is a 0-based offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : Error("syntax error at position " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ZeroDenominator : public Error {
 public:
  ZeroDenominator() : Error("symbol denominator is the zero polynomial") {}
};

class NotRatT : public Error {
 public:
  NotRatT() : Error("symbol has a pole off the unit circle") {}
};

class NotProperRatT : public Error {
 public:
  explicit NotProperRatT(const std::string& why) : Error("symbol is not a proper Rat(T) symbol: " + why) {}
};

}  // namespace toeplitz

#endif  // TOEPLITZ_ERRORS_HPP
