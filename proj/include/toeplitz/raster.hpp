#ifndef TOEPLITZ_RASTER_HPP
#define TOEPLITZ_RASTER_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "roots.hpp"
#include "spectral.hpp"
#include "symbol.hpp"

namespace toeplitz {

struct GridSpec {
  double re_min = -2.0, re_max = 2.0;
  double im_min = -2.0, im_max = 2.0;
  int width = 64, height = 64;

  void validate() const {
    if (!(re_min < re_max) || !(im_min < im_max)) throw std::invalid_argument("grid window must satisfy min < max");
    if (width <= 0 || height <= 0) throw std::invalid_argument("grid size must be positive");
  }

  double pixel_width() const { return (re_max - re_min) / width; }
  double pixel_height() const { return (im_max - im_min) / height; }

  /// Center of cell (row, col); row 0 is the top row at im_max.
  cplx center(int row, int col) const {
    return {re_min + (col + 0.5) * pixel_width(), im_max - (row + 0.5) * pixel_height()};
  }
};

struct GridCell {
  Verdict verdict = Verdict::Unknown;
  std::optional<int> index;
  bool on_curve = false;  // k_lambda_zero > 0
  /// min | |z| - 1 | over roots of lambda*q - s
  double essential_distance = std::numeric_limits<double>::infinity();
  /// Upper bound on the distance from lambda to omega(T) in lambda units:
  /// min over roots z of |omega(z/|z|) - lambda|. To first order it equals
  /// | |z| - 1 | * |omega'(z)| for roots near the circle.
  double curve_distance = std::numeric_limits<double>::infinity();
};

struct ClassifiedGrid {
  GridSpec spec;
  std::vector<GridCell> cells;  // row-major

  const GridCell& at(int row, int col) const { return cells[static_cast<std::size_t>(row) * spec.width + col]; }
};

inline GridCell classify_cell(const RationalSymbol& w, cplx lam, const RootConfig& cfg) {
  GridCell cell;
  try {
    const PencilAnalysis a = analyze_pencil(w, lam, cfg);
    const Classification c = classify_counts(a.counts);
    cell.verdict = c.verdict;
    cell.index = c.index;
    cell.on_curve = c.essential;
    if (a.counts.identically_zero) {
      cell.essential_distance = cell.curve_distance = 0.0;
      return cell;
    }
    for (const Root& r : a.roots.roots) {
      const double gap = std::abs(std::abs(r.value) - 1.0);
      cell.essential_distance = std::min(cell.essential_distance, gap);
      // omega at the radial projection is a point of omega(T)
      const cplx zeta = r.value / std::abs(r.value);
      const double d = std::abs(eval(w.numerator(), zeta) / eval(w.denominator(), zeta) - lam);
      if (std::isfinite(d)) cell.curve_distance = std::min(cell.curve_distance, d);
    }
  } catch (const NonConvergence&) {
    cell = GridCell{};
  }
  return cell;
}

/// Classifies the center of every cell. Cells are independent; threads == 0
/// uses the available hardware parallelism.
inline ClassifiedGrid classify_grid(const RationalSymbol& w, const GridSpec& spec, const RootConfig& cfg = {},
                                    unsigned threads = 1) {
  spec.validate();
  ClassifiedGrid g{spec, std::vector<GridCell>(static_cast<std::size_t>(spec.width) * spec.height)};
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(spec.height));

  std::atomic<int> next_row{0};
  auto worker = [&] {
    for (int row = next_row++; row < spec.height; row = next_row++)
      for (int col = 0; col < spec.width; ++col)
        g.cells[static_cast<std::size_t>(row) * spec.width + col] = classify_cell(w, spec.center(row, col), cfg);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return g;
}

using Rgb = std::array<std::uint8_t, 3>;

namespace palette {
inline constexpr Rgb white{255, 255, 255};
inline constexpr Rgb black{0, 0, 0};
inline constexpr Rgb blue{0, 0, 255};
inline constexpr Rgb red{255, 0, 0};
inline constexpr Rgb cyan{0, 255, 255};
inline constexpr Rgb magenta{255, 0, 255};
inline constexpr Rgb yellow{255, 255, 0};
inline constexpr Rgb green{0, 255, 0};
inline constexpr Rgb dark_gray{64, 64, 64};
inline constexpr Rgb orange{255, 165, 0};
}  // namespace palette

/// Region color for a Fredholm index. Indices without a named color take a
/// fixed HSV ramp keyed on the index.
inline Rgb index_color(int index) {
  switch (index) {
    case 0: return palette::white;
    case 1: return palette::blue;
    case 2: return palette::red;
    case -1: return palette::cyan;
    case -2: return palette::magenta;
    case -3: return palette::yellow;
    case -4: return palette::green;
    case -5: return palette::dark_gray;
    default: break;
  }
  const double hue = std::fmod(std::abs(index) * 137.50776405003785 + (index > 0 ? 20.0 : 200.0), 360.0);
  const double s = 0.55, v = 0.8;
  const double c = v * s;
  const double hp = hue / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = c, g = x; break;
    case 1: r = x, g = c; break;
    case 2: g = c, b = x; break;
    case 3: g = x, b = c; break;
    case 4: r = x, b = c; break;
    default: r = c, b = x; break;
  }
  const double m = v - c;
  auto byte = [](double t) { return static_cast<std::uint8_t>(std::lround(std::clamp(t, 0.0, 1.0) * 255.0)); };
  return {byte(r + m), byte(g + m), byte(b + m)};
}

/// 1.5 pixel diagonals, in lambda units.
inline double default_curve_thickness(const GridSpec& spec) {
  return 1.5 * std::hypot(spec.pixel_width(), spec.pixel_height());
}

inline bool is_curve_pixel(const GridCell& c, double curve_thickness) {
  return c.verdict != Verdict::Unknown && (c.on_curve || c.curve_distance <= curve_thickness);
}

inline Rgb cell_color(const GridCell& c, double curve_thickness) {
  if (c.verdict == Verdict::Unknown) return palette::orange;
  if (is_curve_pixel(c, curve_thickness) || !c.index) return palette::black;
  return index_color(*c.index);
}

/// Binary PPM (P6), top row first.
inline std::string render_ppm(const ClassifiedGrid& g, double curve_thickness) {
  std::string out = "P6\n" + std::to_string(g.spec.width) + " " + std::to_string(g.spec.height) + "\n255\n";
  out.reserve(out.size() + g.cells.size() * 3);
  // region fill and curve overlay in one pass: a curve pixel is black
  // regardless of its region color
  for (const GridCell& c : g.cells) {
    const Rgb rgb = cell_color(c, curve_thickness);
    out.append(reinterpret_cast<const char*>(rgb.data()), 3);
  }
  return out;
}

inline std::string render_ppm(const ClassifiedGrid& g) { return render_ppm(g, default_curve_thickness(g.spec)); }

}  // namespace toeplitz

#endif  // TOEPLITZ_RASTER_HPP
