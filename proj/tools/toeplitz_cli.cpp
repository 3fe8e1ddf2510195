// toeplitz: spectra of Toeplitz-like operators with rational symbols.
//
// Exit codes: 0 ok, 1 selftest failure or I/O error, 2 symbol/number parse
// error, 3 numerical failure, 4 bad flags or config.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <toeplitz/config.hpp>
#include <toeplitz/curve.hpp>
#include <toeplitz/raster.hpp>
#include <toeplitz/report.hpp>
#include <toeplitz/selftest.hpp>
#include <toeplitz/symbol.hpp>

namespace {

enum Exit : int { kOk = 0, kFailure = 1, kParse = 2, kNumeric = 3, kUsage = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<double> tol_circle, tol_deflate, cluster_radius, tol_multiple;
  std::optional<int> max_iters;
  std::optional<unsigned> threads;
  std::string config_path;

  std::string symbol;
  std::vector<std::string> lambdas;
  bool json = false;
  std::optional<int> n;
  std::optional<double> clip;
  std::string out;
  std::vector<double> window{-3, 3, -3, 3};
  std::vector<int> size{256, 256};
  std::optional<double> thickness;
  std::vector<int> only;
};

toeplitz::Settings load_settings(const Options& o) {
  toeplitz::Settings s;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw toeplitz::ConfigError("cannot read config file " + o.config_path);
    toeplitz::apply_config(s, toeplitz::read_config(in));
  }
  // flags take precedence over the config file
  if (o.tol_circle) s.roots.tol_circle = *o.tol_circle;
  if (o.tol_deflate) s.roots.tol_deflate = *o.tol_deflate;
  if (o.cluster_radius) s.roots.cluster_radius = *o.cluster_radius;
  if (o.tol_multiple) s.roots.tol_multiple = *o.tol_multiple;
  if (o.max_iters) s.roots.max_iters = *o.max_iters;
  if (o.threads) s.threads = *o.threads;
  if (o.clip) s.clip_modulus = *o.clip;
  toeplitz::validate(s);
  return s;
}

std::vector<std::pair<std::string, toeplitz::cplx>> parse_points(const std::vector<std::string>& texts) {
  std::vector<std::pair<std::string, toeplitz::cplx>> pts;
  for (const std::string& t : texts) pts.emplace_back(t, toeplitz::parse_complex(t));
  return pts;
}

/// Writes to the named file, or stdout when the name is empty or "-".
template <class F>
void with_output(const std::string& path, bool binary, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) throw IoError("cannot open " + path + " for writing");
  write(f);
  if (!f) throw IoError("write to " + path + " failed");
}

int cmd_classify(const Options& o, const toeplitz::Settings& s) {
  const toeplitz::RationalSymbol w = toeplitz::parse_symbol(o.symbol);
  const toeplitz::Report r = toeplitz::build_report(w, o.symbol, parse_points(o.lambdas), s.roots);
  std::cout << toeplitz::to_json(r).dump(2) << '\n';
  return kOk;
}

int cmd_report(const Options& o, const toeplitz::Settings& s) {
  const toeplitz::RationalSymbol w = toeplitz::parse_symbol(o.symbol);
  const toeplitz::Report r = toeplitz::build_report(w, o.symbol, parse_points(o.lambdas), s.roots);
  if (o.json)
    std::cout << toeplitz::to_json(r).dump(2) << '\n';
  else
    std::cout << toeplitz::to_text(r);
  return kOk;
}

int cmd_curve(const Options& o, const toeplitz::Settings& s) {
  const toeplitz::RationalSymbol w = toeplitz::parse_symbol(o.symbol);
  toeplitz::CurveOptions opt;
  opt.n_base = o.n.value_or(s.n_base);
  opt.clip_modulus = s.clip_modulus;
  opt.roots = s.roots;
  const toeplitz::CurvePolyline c = toeplitz::sample_curve(w, opt);
  with_output(o.out, false, [&](std::ostream& os) { toeplitz::write_curve_csv(os, c); });
  return kOk;
}

int cmd_raster(const Options& o, const toeplitz::Settings& s) {
  const toeplitz::RationalSymbol w = toeplitz::parse_symbol(o.symbol);
  const toeplitz::GridSpec spec{o.window[0], o.window[1], o.window[2], o.window[3], o.size[0], o.size[1]};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw toeplitz::ConfigError(e.what());
  }
  const toeplitz::ClassifiedGrid g = toeplitz::classify_grid(w, spec, s.roots, s.threads);
  const std::string ppm =
      o.thickness ? toeplitz::render_ppm(g, *o.thickness) : toeplitz::render_ppm(g);
  with_output(o.out, true, [&](std::ostream& os) { os.write(ppm.data(), static_cast<std::streamsize>(ppm.size())); });
  return kOk;
}

int cmd_selftest(const Options& o, const toeplitz::Settings& s) {
  const auto results = toeplitz::selftest::run(s.roots, o.only);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  if (o.json) {
    std::cout << toeplitz::selftest::to_json(results).dump(2) << '\n';
  } else {
    for (const auto& r : results) std::cout << toeplitz::selftest::format_line(r) << '\n';
  }
  return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Spectral analysis of Toeplitz-like operators with rational symbols"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol-circle", o.tol_circle, "|z| within this of 1 counts as on the circle (default 1e-9)");
  app.add_option("--tol-deflate", o.tol_deflate, "relative trim of leading coefficients (default 1e-10)");
  app.add_option("--cluster-radius", o.cluster_radius, "merge radius for root approximations (default 1e-7)");
  app.add_option("--tol-multiple", o.tol_multiple, "Taylor test bound for multiple roots (default 1e-13)");
  app.add_option("--max-iters", o.max_iters, "root iteration cap (default 200)");
  app.add_option("--threads", o.threads, "raster worker threads, 0 = all cores (default 0)");
  app.add_option("--config", o.config_path, "key = value file; flags take precedence")->check(CLI::ExistingFile);

  auto* classify = app.add_subcommand("classify", "classify lambda values, JSON report on stdout");
  classify->add_option("symbol", o.symbol, "symbol, e.g. \"z/(z^2+1)\"")->required();
  classify->add_option("lambda", o.lambdas, "complex values such as 0, -1+i, 2i")->required();

  auto* report = app.add_subcommand("report", "structure of the symbol and optional lambda values");
  report->add_option("symbol", o.symbol)->required();
  report->add_option("lambda", o.lambdas);
  report->add_flag("--json", o.json, "JSON instead of text");

  auto* curve = app.add_subcommand("curve", "sample omega(T) as CSV");
  curve->add_option("symbol", o.symbol)->required();
  curve->add_option("-n,--samples", o.n, "base samples on the circle (default 512)")->check(CLI::Range(16, 1 << 24));
  curve->add_option("--clip", o.clip, "clip modulus (default 1e6)");
  curve->add_option("-o,--out", o.out, "output file (default stdout)");

  auto* raster = app.add_subcommand("raster", "render the index-colored spectrum as PPM");
  raster->add_option("symbol", o.symbol)->required();
  raster->add_option("--window", o.window, "re_min re_max im_min im_max")->expected(4);
  raster->add_option("--size", o.size, "width height")->expected(2);
  raster->add_option("--thickness", o.thickness, "curve thickness in lambda units (default 1.5 pixel diagonals)");
  raster->add_option("-o,--out", o.out, "output file (default stdout)");

  auto* self = app.add_subcommand("selftest", "run the built-in verification suite");
  self->add_flag("--json", o.json, "machine-readable results");
  self->add_option("--only", o.only, "run only these check ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    const toeplitz::Settings s = load_settings(o);
    if (*classify) return cmd_classify(o, s);
    if (*report) return cmd_report(o, s);
    if (*curve) return cmd_curve(o, s);
    if (*raster) return cmd_raster(o, s);
    if (*self) return cmd_selftest(o, s);
  } catch (const toeplitz::SyntaxError& e) {
    std::cerr << "toeplitz: " << e.what() << '\n';
    return kParse;
  } catch (const toeplitz::ZeroDenominator& e) {
    std::cerr << "toeplitz: " << e.what() << '\n';
    return kParse;
  } catch (const toeplitz::ConfigError& e) {
    std::cerr << "toeplitz: " << e.what() << '\n';
    return kUsage;
  } catch (const toeplitz::Error& e) {
    std::cerr << "toeplitz: " << e.what() << '\n';
    return kNumeric;
  } catch (const IoError& e) {
    std::cerr << "toeplitz: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
