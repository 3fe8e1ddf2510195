#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <toeplitz/format.hpp>
#include <toeplitz/parse.hpp>
#include <toeplitz/symbol.hpp>

#include "test_support.hpp"

using namespace toeplitz;
using toeplitz::testing::max_coeff_diff;

namespace {
const cplx I{0.0, 1.0};

const std::vector<std::string> kReferenceSymbols{
    "(z-1+0.5i)/(z-1)",
    "1/(z-1)^2",
    "z/(z^2+1)",
    "(z^3+3z+1)/(z^2-1)",
    "(z^4+3z+1)/(z^2-1)",
    "(z+1)/(z-1)^2",
    "(z + (-0.5+0.125i))/(z-1)^2",
    "z^4/(z-1)^2",
    "(z^6+1.7)/(z-1)^2",
    "(z^7+1.1)/(z-1)^2",
    "(z^3 + 0.3)/(z-1)^2",
};
}  // namespace

TEST_CASE("parse_symbol on the reference symbols", "[symbol]") {
  SECTION("cubic over z^2 - 1") {
    const RationalSymbol w = parse_symbol("(z^3+3z+1)/(z^2-1)");
    CHECK(w.numerator() == Polynomial{1, 3, 0, 1});
    CHECK(w.denominator() == Polynomial{-1, 0, 1});
    CHECK_FALSE(w.cancelled());
  }
  SECTION("double pole") {
    const RationalSymbol w = parse_symbol("1/(z-1)^2");
    CHECK(w.numerator() == Polynomial{1});
    CHECK(w.denominator() == Polynomial{1, -2, 1});
  }
  SECTION("common factor is cancelled with a note") {
    const RationalSymbol w = parse_symbol("(z^2-1)/(z-1)");
    CHECK(w.cancelled());
    REQUIRE(w.notes().size() == 1);
    CHECK(w.notes()[0].find("cancelled") != std::string::npos);
    CHECK(max_coeff_diff(w.numerator(), Polynomial{1, 1}) < 1e-12);
    CHECK(w.denominator() == Polynomial{1});
  }
}

TEST_CASE("parser grammar", "[symbol][parse]") {
  CHECK(parse_symbol("3*z").numerator() == Polynomial{0, 3});
  CHECK(parse_symbol("  z ^ 2 - 2 * z + 1 ").numerator() == Polynomial{1, -2, 1});
  CHECK(parse_symbol("-z^2").numerator() == Polynomial{0, 0, -1});
  CHECK(parse_symbol("2i*z + i").numerator() == Polynomial{I, 2.0 * I});
  CHECK(parse_symbol("(1+2i)*z").numerator() == Polynomial{0, cplx{1, 2}});
  CHECK(parse_symbol("1.5e-3*z").numerator() == Polynomial{0, 1.5e-3});
  CHECK(parse_symbol("2.5z^2").numerator() == Polynomial{0, 0, 2.5});
  CHECK(parse_symbol("z^0").numerator() == Polynomial{1});
  // normalization makes q monic
  const RationalSymbol w = parse_symbol("1/(2*z-2)");
  CHECK(w.denominator() == Polynomial{-1, 1});
  CHECK(w.numerator() == Polynomial{0.5});
}

TEST_CASE("coefficient-list input form", "[symbol][parse]") {
  const RationalSymbol a = parse_symbol("[1, 3, 0, 1] / [-1, 0, 1]");
  const RationalSymbol b = parse_symbol("(z^3+3*z+1)/(z^2-1)");
  CHECK(a.numerator() == b.numerator());
  CHECK(a.denominator() == b.denominator());
  CHECK(parse_symbol("[0.5-0.25i, 2]").numerator() == Polynomial{cplx{0.5, -0.25}, 2});
  CHECK_THROWS_AS(parse_symbol("[1, z]"), SyntaxError);
  CHECK_THROWS_AS(parse_symbol("[]"), SyntaxError);
}

TEST_CASE("parser errors carry positions", "[symbol][parse]") {
  auto position_of = [](const std::string& text) -> std::size_t {
    try {
      (void)parse_symbol(text);
    } catch (const SyntaxError& e) {
      return e.position();
    }
    return std::string::npos;
  };
  CHECK(position_of("z +") == 3);
  CHECK(position_of("(z-1") == 4);
  CHECK(position_of("z^-1") == 2);
  CHECK(position_of("z^1.5") == 2);
  CHECK(position_of("z $ 1") == 2);
  CHECK(position_of("z z") == 2);
  CHECK(position_of("3(z+1)") == 1);
  CHECK(position_of("") == 0);
  CHECK_THROWS_AS(parse_symbol("1/(z-z)"), ZeroDenominator);
  CHECK_THROWS_AS(parse_symbol("1/0"), ZeroDenominator);
}

TEST_CASE("zero symbol", "[symbol]") {
  const RationalSymbol w = parse_symbol("0/(z-1)");
  CHECK(w.is_zero());
  CHECK(w.denominator() == Polynomial{1});
}

TEST_CASE("symbol accessors", "[symbol]") {
  const RationalSymbol w = parse_symbol("(2*z^2 + z)/(z-1)^2");
  CHECK(w.proper());
  CHECK_FALSE(w.strictly_proper());
  CHECK(w.leading_a() == cplx{1.0});
  CHECK(w.coefficient_b() == cplx{2.0});
  CHECK(w.rat_t());
  CHECK_FALSE(parse_symbol("1/(z-2)").rat_t());
  CHECK(parse_symbol("z^2+1").rat_t());
  CHECK_FALSE(parse_symbol("(z^3+3z+1)/(z^2-1)").proper());
}

TEST_CASE("circle_factor", "[symbol]") {
  SECTION("constructed locations") {
    const Polynomial p = Polynomial::from_roots(std::vector<cplx>{0.5, 1.0, 3.0});
    const CircleFactorization f = circle_factor(p);
    CHECK(max_coeff_diff(f.s_minus, Polynomial{-0.5, 1}) < 1e-12);
    CHECK(max_coeff_diff(f.s_zero, Polynomial{-1, 1}) < 1e-12);
    CHECK(max_coeff_diff(f.s_plus, Polynomial{-3, 1}) < 1e-12);
    CHECK(f.unit == cplx{1.0});
  }
  SECTION("constant") {
    const CircleFactorization f = circle_factor(Polynomial{cplx{2, -1}});
    CHECK(f.s_minus == Polynomial{1});
    CHECK(f.s_zero == Polynomial{1});
    CHECK(f.s_plus == Polynomial{1});
    CHECK(f.unit == cplx{2, -1});
  }
  SECTION("z^2 - 1") {
    const CircleFactorization f = circle_factor(Polynomial{-1, 0, 1});
    CHECK(f.s_minus == Polynomial{1});
    CHECK(max_coeff_diff(f.s_zero, Polynomial{-1, 0, 1}) < 1e-12);
    CHECK(f.s_plus == Polynomial{1});
  }
  SECTION("product reproduces the input and degrees add up") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
      const Polynomial p = toeplitz::testing::random_polynomial(rng, 1 + trial % 9);
      const CircleFactorization f = circle_factor(p);
      CHECK(f.s_minus.degree() + f.s_zero.degree() + f.s_plus.degree() == p.degree());
      const Polynomial back = scale(mul(mul(f.s_minus, f.s_zero), f.s_plus), f.unit);
      CHECK(max_coeff_diff(back, p) <= 1e-8 * p.norm_inf());
      for (const auto& r : find_roots(f.s_minus).roots) CHECK(r.location == CircleLocation::Inside);
      for (const auto& r : find_roots(f.s_plus).roots) CHECK(r.location == CircleLocation::Outside);
    }
  }
}

TEST_CASE("evaluate_symbol", "[symbol]") {
  const RationalSymbol w = parse_symbol("z/(z^2+1)");
  for (double theta : {0.1, 0.7, 2.0, 3.0, 4.4, 6.0}) {
    const auto v = evaluate_symbol(w, std::polar(1.0, theta));
    REQUIRE(v.has_value());
    CHECK(std::abs(*v - 1.0 / (2.0 * std::cos(theta))) < 1e-12 * std::abs(*v));
  }
  const cplx alpha{0.3, -0.4};
  const auto at0 = evaluate_symbol(RationalSymbol::from_polynomials(Polynomial{-alpha, 1}, Polynomial{-1, 1}), 0.0);
  REQUIRE(at0.has_value());
  CHECK(std::abs(*at0 - alpha) < 1e-15);
  CHECK_FALSE(evaluate_symbol(parse_symbol("1/(z-1)^2"), 1.0).has_value());
}

TEST_CASE("evaluate_symbol agrees with direct expression evaluation", "[symbol][property]") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const std::string& text : kReferenceSymbols) {
    const RationalSymbol w = parse_symbol(text);
    const ExprPtr tree = parse_expression(text);
    for (int k = 0; k < 100; ++k) {
      const cplx z{u(rng), u(rng)};
      const auto v = evaluate_symbol(w, z);
      REQUIRE(v.has_value());
      const cplx direct = evaluate_expression(*tree, z);
      INFO(text << " at " << z);
      CHECK(std::abs(*v - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("printing and reparsing is idempotent", "[symbol][property]") {
  std::vector<std::string> texts = kReferenceSymbols;
  texts.push_back("((0.25-1.5i)*z^3 - 2i*z + 7)/(z^2 + (0.1+0.2i)*z - 3)");
  texts.push_back("[1e-7, -2.5, 0.333333333333]/[0.5i, 1]");
  for (const std::string& text : texts) {
    const RationalSymbol w = parse_symbol(text);
    const RationalSymbol again = parse_symbol(w.to_string());
    INFO(text << " -> " << w.to_string());
    CHECK(max_coeff_diff(w.numerator(), again.numerator()) <= 1e-12 * std::max(1.0, w.numerator().norm_inf()));
    CHECK(max_coeff_diff(w.denominator(), again.denominator()) <= 1e-12);
    CHECK(again.to_string() == w.to_string());
  }
  CHECK(parse_symbol("(z^3+3z+1)/(z^2-1)").to_string() == "(z^3 + 3*z + 1)/(z^2 - 1)");
  CHECK(parse_symbol("z - 0.5i").to_string() == "z - 0.5i");
}
