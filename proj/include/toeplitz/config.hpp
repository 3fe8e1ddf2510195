#ifndef TOEPLITZ_CONFIG_HPP
#define TOEPLITZ_CONFIG_HPP

#include <charconv>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "roots.hpp"

namespace toeplitz {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything the command line can tune.
struct Settings {
  RootConfig roots;
  unsigned threads = 0;  // 0 = available parallelism
  int n_base = 512;
  double clip_modulus = 1e6;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError("bad value for " + std::string(key) + ": '" + std::string(text) + "'");
  return v;
}

}  // namespace detail

/// Reads "key = value" lines. '#' starts a comment; [sections] are ignored;
/// values may be double-quoted.
inline std::map<std::string, std::string> read_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = detail::trim(s);
    if (s.empty() || s.front() == '[') continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string_view key = detail::trim(s.substr(0, eq));
    std::string_view value = detail::trim(s.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    out[std::string(key)] = std::string(value);
  }
  return out;
}

inline void validate(const Settings& s) {
  const RootConfig& r = s.roots;
  if (!(r.tol_circle >= 0.0) || !(r.tol_deflate >= 0.0) || !(r.cluster_radius >= 0.0) || !(r.tol_multiple >= 0.0))
    throw ConfigError("tolerances must be non-negative");
  if (r.max_iters < 1) throw ConfigError("max_iters must be positive");
  if (s.n_base < 16) throw ConfigError("n_base must be at least 16");
  if (!(s.clip_modulus > 0.0)) throw ConfigError("clip_modulus must be positive");
}

/// Applies known keys; unknown keys and malformed or out-of-range values
/// throw ConfigError.
inline void apply_config(Settings& s, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "tol_circle")
      s.roots.tol_circle = detail::parse_number<double>(key, value);
    else if (key == "tol_deflate")
      s.roots.tol_deflate = detail::parse_number<double>(key, value);
    else if (key == "cluster_radius")
      s.roots.cluster_radius = detail::parse_number<double>(key, value);
    else if (key == "tol_multiple")
      s.roots.tol_multiple = detail::parse_number<double>(key, value);
    else if (key == "max_iters")
      s.roots.max_iters = detail::parse_number<int>(key, value);
    else if (key == "threads")
      s.threads = detail::parse_number<unsigned>(key, value);
    else if (key == "n_base")
      s.n_base = detail::parse_number<int>(key, value);
    else if (key == "clip_modulus")
      s.clip_modulus = detail::parse_number<double>(key, value);
    else
      throw ConfigError("unknown config key '" + key + "'");
  }
  validate(s);
}

}  // namespace toeplitz

#endif  // TOEPLITZ_CONFIG_HPP
