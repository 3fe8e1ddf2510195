// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any selected criterion fails.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <toeplitz/selftest.hpp>

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance [--only N]...\n");
      return 2;
    }
  }
  bool ok = true;
  for (const auto& r : toeplitz::selftest::run({}, only)) {
    std::printf("%s\n", toeplitz::selftest::format_line(r).c_str());
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
