#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <toeplitz/poly.hpp>
#include <toeplitz/roots.hpp>

#include "test_support.hpp"

using namespace toeplitz;
using toeplitz::testing::max_coeff_diff;
using toeplitz::testing::random_polynomial;

namespace {
const cplx I{0.0, 1.0};
}

TEST_CASE("add", "[poly]") {
  CHECK(add(Polynomial{1, 1}, Polynomial{1, -1}) == Polynomial{2});
  const Polynomial p{3, -2, 5};
  CHECK(add(Polynomial{}, p) == p);
  CHECK(add(Polynomial{-1, 0, 1}, Polynomial{1}) == Polynomial{0, 0, 1});
}

TEST_CASE("add keeps near-zero leading terms until trimmed", "[poly]") {
  const Polynomial sum = add(Polynomial{1, 1.0 + 1e-14}, Polynomial{0, -1});
  CHECK(sum.degree() == 1);
  CHECK(sum.trimmed(1e-12).degree() == 0);
}

TEST_CASE("mul", "[poly]") {
  CHECK(mul(Polynomial{-1, 1}, Polynomial{-1, 1}) == Polynomial{1, -2, 1});
  CHECK(mul(Polynomial{-1, 1}, Polynomial{1, 1}) == Polynomial{-1, 0, 1});
  const Polynomial p{2, I, -4};
  CHECK(mul(Polynomial{1}, p) == p);
  CHECK(mul(Polynomial{}, p).is_zero());
}

TEST_CASE("axpy_lambda forms lambda*q - s", "[poly]") {
  SECTION("parametric family k = 1 at lambda = 1") {
    const cplx alpha{0.3, -0.7};
    const Polynomial r = axpy_lambda(Polynomial{1, -2, 1}, Polynomial{alpha, 1}, 1.0);
    REQUIRE(r.degree() == 2);
    CHECK(std::abs(r[0] - (1.0 - alpha)) < 1e-15);
    CHECK(std::abs(r[1] - (-3.0)) < 1e-15);
    CHECK(std::abs(r[2] - 1.0) < 1e-15);
  }
  SECTION("lambda = 0") {
    const Polynomial r = axpy_lambda(Polynomial{1, 0, 1}, Polynomial{0, 1}, 0.0);
    CHECK(r == Polynomial{0, -1});
  }
  SECTION("degree deflates at lambda = b/a") {
    const cplx alpha{0.0, -0.5};
    const Polynomial r = axpy_lambda(Polynomial{-1, 1}, Polynomial{-alpha, 1}, 1.0);
    REQUIRE(r.degree() == 0);
    CHECK(std::abs(r[0] - (alpha - 1.0)) < 1e-15);
  }
  SECTION("near-cancellation below tolerance is deflated") {
    const Polynomial r = axpy_lambda(Polynomial{-1, 1}, Polynomial{0, 1}, 1.0 + 1e-12);
    CHECK(r.degree() == 0);
  }
}

TEST_CASE("derivative", "[poly]") {
  CHECK(derivative(Polynomial{-1, 0, 1}) == Polynomial{0, 2});
  CHECK(derivative(Polynomial{7}).is_zero());
  CHECK(derivative(Polynomial{1, 3, 0, 1}) == Polynomial{3, 0, 3});
}

TEST_CASE("eval", "[poly]") {
  CHECK(eval(Polynomial{-1, 0, 1}, 1.0) == cplx{0.0});
  CHECK(std::abs(eval(Polynomial{1, 0, 1}, I)) < 1e-15);
  CHECK(eval(Polynomial{1, 3, 0, 1}, 1.0) == cplx{5.0});
}

TEST_CASE("divide", "[poly]") {
  {
    auto [quot, rem] = divide(Polynomial{-1, 0, 1}, Polynomial{-1, 1});
    CHECK(quot == Polynomial{1, 1});
    CHECK(rem.is_zero());
  }
  {
    auto [quot, rem] = divide(Polynomial{1, 0, 1}, Polynomial{-1, 1});
    CHECK(quot == Polynomial{1, 1});
    CHECK(rem == Polynomial{2});
  }
  {
    const Polynomial p{4, I, -2, 1};
    auto [quot, rem] = divide(p, Polynomial{1});
    CHECK(quot == p);
    CHECK(rem.is_zero());
  }
  CHECK_THROWS_AS(divide(Polynomial{1, 1}, Polynomial{}), DivisionByZero);
}

TEST_CASE("gcd_numeric", "[poly]") {
  CHECK(max_coeff_diff(gcd_numeric(Polynomial{-1, 0, 1}, Polynomial{-1, 1}), Polynomial{-1, 1}) < 1e-12);
  CHECK(gcd_numeric(Polynomial{1, 0, 1}, Polynomial{-1, 1}) == Polynomial{1});
  CHECK(max_coeff_diff(gcd_numeric(Polynomial{1, -2, 1}, Polynomial{-1, 0, 1}), Polynomial{-1, 1}) < 1e-12);
  CHECK_THROWS_AS(gcd_numeric(Polynomial{}, Polynomial{}), std::invalid_argument);
  CHECK(gcd_numeric(Polynomial{}, Polynomial{2, 4}) == Polynomial{0.5, 1});
}

TEST_CASE("divide(mul(p, q), q) recovers p", "[poly][property]") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> deg(0, 12);
  for (int trial = 0; trial < 300; ++trial) {
    const Polynomial p = random_polynomial(rng, deg(rng));
    // divisor roots in the disk keep long division stable
    std::vector<cplx> roots(static_cast<std::size_t>(deg(rng)));
    for (cplx& r : roots) r = 0.95 * toeplitz::testing::random_unit_box(rng) / std::sqrt(2.0);
    const Polynomial q = Polynomial::from_roots(roots, toeplitz::testing::random_unit_box(rng) + 2.0);
    auto [quot, rem] = divide(mul(p, q), q);
    INFO("trial " << trial);
    CHECK(max_coeff_diff(quot, p) <= 1e-10 * std::max(1.0, p.norm_inf()));
    CHECK(rem.norm_inf() <= 1e-10 * std::max(1.0, mul(p, q).norm_inf()));
  }
}

TEST_CASE("axpy_lambda agrees with pointwise lambda*q(z) - s(z)", "[poly][property]") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> deg(0, 8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    const Polynomial q = random_polynomial(rng, deg(rng));
    const Polynomial s = random_polynomial(rng, deg(rng));
    const cplx lam{u(rng), u(rng)};
    cplx z{u(rng), u(rng)};
    if (std::abs(z) > 2.0) z *= 2.0 / std::abs(z);
    const cplx expected = lam * eval(q, z) - eval(s, z);
    const cplx got = eval(axpy_lambda(q, s, lam), z);
    const double scale_ref = std::abs(lam) * std::abs(eval(q, z)) + std::abs(eval(s, z));
    CHECK(std::abs(got - expected) <= 1e-12 * std::max(1.0, scale_ref));
  }
}

TEST_CASE("gcd_numeric recovers a planted common factor", "[poly][property]") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> deg(1, 4);
  const std::vector<cplx> g_roots{cplx{0.5, 0.25}, cplx{-1.2, 0.4}};
  const Polynomial g = Polynomial::from_roots(g_roots);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Polynomial p = random_polynomial(rng, deg(rng));
    const Polynomial q = random_polynomial(rng, deg(rng));
    // keep only pairs that are clearly coprime and do not vanish on g's roots
    const RootSet rp = find_roots(p), rq = find_roots(q);
    double sep = 1e300;
    for (const auto& a : rp.roots) {
      for (const auto& b : rq.roots) sep = std::min(sep, std::abs(a.value - b.value));
      for (const cplx& r : g_roots) sep = std::min(sep, std::abs(a.value - r));
    }
    for (const auto& b : rq.roots)
      for (const cplx& r : g_roots) sep = std::min(sep, std::abs(b.value - r));
    if (sep < 0.1) continue;
    ++checked;
    const Polynomial d = gcd_numeric(mul(p, g), mul(q, g));
    INFO("trial " << trial);
    REQUIRE(d.degree() == 2);
    const RootSet rd = find_roots(d);
    std::vector<cplx> got;
    for (const auto& r : rd.roots) got.push_back(r.value);
    CHECK(toeplitz::testing::multiset_distance(got, g_roots) < 1e-6);
  }
  CHECK(checked > 100);
}
