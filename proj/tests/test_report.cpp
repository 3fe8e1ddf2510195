#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <toeplitz/config.hpp>
#include <toeplitz/report.hpp>
#include <toeplitz/selftest.hpp>

using namespace toeplitz;

TEST_CASE("parse_complex", "[report]") {
  CHECK(parse_complex("0") == cplx{0, 0});
  CHECK(parse_complex("-1+i") == cplx{-1, 1});
  CHECK(parse_complex("2i") == cplx{0, 2});
  CHECK(parse_complex("-0.5 - 2.5e-1i") == cplx{-0.5, -0.25});
  CHECK(parse_complex("(1+i)^2") == cplx{0, 2});
  CHECK(parse_complex("3/4") == cplx{0.75, 0});
  CHECK_THROWS_AS(parse_complex("1+z"), SyntaxError);
  CHECK_THROWS_AS(parse_complex("1/0"), SyntaxError);
  CHECK_THROWS_AS(parse_complex("1+"), SyntaxError);
}

TEST_CASE("build_report", "[report]") {
  const RationalSymbol w = parse_symbol("z/(z^2+1)");
  const Report r = build_report(w, "z/(z^2+1)", {{"0", 0.0}, {"1.5", 1.5}, {"2i", {0, 2}}});
  CHECK(r.symbol_text == "(z)/(z^2 + 1)");
  CHECK(r.proper);
  // poles +-i lie on the circle
  CHECK(r.rat_t);
  REQUIRE(r.diagnostics.has_value());
  CHECK(r.diagnostics->kernel_dim == 1);
  REQUIRE(r.points.size() == 3);
  CHECK(r.points[0].classification.verdict == Verdict::PointSpectrum);
  CHECK(r.points[0].classification.index == 1);
  CHECK(r.points[0].essential_distance == Catch::Approx(1.0));
  CHECK(r.points[1].classification.verdict == Verdict::ContinuousSpectrum);
  CHECK(r.points[1].essential_distance <= 1e-9);
  CHECK(r.points[2].classification.index == 1);
  CHECK(r.poles.total_multiplicity() == 2);
  REQUIRE(r.zeros.has_value());
  CHECK(r.zeros->total_multiplicity() == 1);
}

TEST_CASE("report JSON", "[report]") {
  const RationalSymbol w = parse_symbol("(z^2 - z)/((z-1)^3)");
  const Report r = build_report(w, "(z^2 - z)/((z-1)^3)", {{"0", 0.0}});
  const nlohmann::json j = to_json(r);
  CHECK(j["input"] == "(z^2 - z)/((z-1)^3)");
  CHECK(j["rat_t"] == true);
  CHECK(j["proper"] == true);
  // reduced symbol z/(z-1)^2
  CHECK(j["diagnostics"]["kernel_dim"] == 1);
  CHECK(j["diagnostics"]["range_closure_codim"] == 0);
  CHECK(j["points"][0]["verdict"] == "point");
  CHECK(j["points"][0]["index"] == 1);
  CHECK(j["points"][0]["counts"]["k_q"] == 2);
  CHECK(j["points"][0]["lambda"]["re"] == 0.0);
  CHECK(j["notes"].size() == 1);
  CHECK(j["notes"][0].get<std::string>().starts_with("cancelled common factor"));
  CHECK(j["config"]["tol_circle"] == 1e-9);
  // the normalized text parses back to the same symbol
  const RationalSymbol back = parse_symbol(j["symbol_text"].get<std::string>());
  CHECK(back.numerator() == w.numerator());
  CHECK(back.denominator() == w.denominator());
}

TEST_CASE("report JSON edge cases", "[report]") {
  // essential verdicts carry a null index; constant pencils an infinite distance
  const nlohmann::json a = to_json(build_report(parse_symbol("z/(z^2+1)"), "", {{"1", 1.0}}));
  CHECK(a["points"][0]["index"].is_null());
  const nlohmann::json off = to_json(build_report(parse_symbol("z/(z-2)"), "", {}));
  CHECK_FALSE(off["rat_t"].get<bool>());
  CHECK(off["diagnostics"].is_null());
  const nlohmann::json b = to_json(build_report(parse_symbol("3"), "3", {{"1", 1.0}, {"3", 3.0}}));
  CHECK(b["points"][0]["essential_distance"].is_null());
  CHECK(b["points"][1]["counts"]["identically_zero"] == true);
  CHECK(b["points"][1]["essential_distance"] == 0.0);
  const nlohmann::json z = to_json(build_report(parse_symbol("0"), "0", {}));
  CHECK(z["zeros"].is_null());
  CHECK(z["diagnostics"].is_null());
}

TEST_CASE("text report", "[report]") {
  const std::string t = to_text(build_report(parse_symbol("1/(z-1)^2"), "", {{"0", 0.0}}));
  CHECK(t.find("symbol      (1)/(z^2 - 2*z + 1)") != std::string::npos);
  CHECK(t.find("poles       1 (x2) [on_circle]") != std::string::npos);
  CHECK(t.find("kernel dim  2") != std::string::npos);
  CHECK(t.find("lambda 0: point, index 2") != std::string::npos);
}

TEST_CASE("config files", "[report]") {
  std::istringstream in("# tolerances\n[roots]\ntol_circle = 1e-6\nmax_iters=50 # inline\n\nthreads = \"3\"\n");
  Settings s;
  apply_config(s, read_config(in));
  CHECK(s.roots.tol_circle == 1e-6);
  CHECK(s.roots.max_iters == 50);
  CHECK(s.threads == 3);
  CHECK(s.roots.cluster_radius == 1e-7);

  auto load = [](const char* text) {
    std::istringstream is(text);
    Settings t;
    apply_config(t, read_config(is));
    return t;
  };
  CHECK_THROWS_AS(load("bogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(load("tol_circle = abc\n"), ConfigError);
  CHECK_THROWS_AS(load("tol_circle 1e-3\n"), ConfigError);
  CHECK_THROWS_AS(load("tol_circle = -1\n"), ConfigError);
  CHECK_THROWS_AS(load("max_iters = 0\n"), ConfigError);
  CHECK_THROWS_AS(load("n_base = 8\n"), ConfigError);
}

TEST_CASE("selftest harness", "[report]") {
  const auto ok = selftest::run({}, {1, 10});
  REQUIRE(ok.size() == 2);
  CHECK(ok[0].passed);
  CHECK(ok[1].passed);
  CHECK(selftest::format_line(ok[0]).starts_with("PASS [1] "));

  // a corrupted circle tolerance must be caught
  RootConfig bad;
  bad.tol_circle = 0.5;
  const auto broken = selftest::run(bad, {1});
  REQUIRE(broken.size() == 1);
  CHECK_FALSE(broken[0].passed);
  CHECK(selftest::format_line(broken[0]).starts_with("FAIL [1] "));

  const nlohmann::json j = selftest::to_json(ok);
  CHECK(j["passed"] == 2);
  CHECK(j["failed"] == 0);
  CHECK(j["checks"][1]["id"] == 10);
}
