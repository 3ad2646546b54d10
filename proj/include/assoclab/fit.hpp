#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace assoc {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  // classical OLS standard error; 0 with two points
  std::size_t points = 0;
};

// Ordinary least squares y = intercept + slope * x. Needs >= 2 points with
// distinct x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

// Fit of log(y) against log(n).
LinearFit log_log_fit(std::span<const std::uint64_t> n, std::span<const double> y);

}  // namespace assoc
