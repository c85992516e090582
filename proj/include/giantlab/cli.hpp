#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace giantlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitGeneration = 4;

/// Entry point of the `giantlab` command. args excludes the program name.
/// Normal output goes to `out`, diagnostics to `err`; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "a,b,c" or "start:stop:step" (inclusive, tolerant of rounding).
/// Throws ParameterError on malformed or empty input.
std::vector<double> parse_grid(const std::string& text);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of y on x; needs two distinct x values.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace giantlab
