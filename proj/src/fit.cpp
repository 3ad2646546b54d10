#include "assoclab/fit.hpp"

#include <cmath>
#include <vector>

#include "assoclab/errors.hpp"

namespace assoc {

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("least_squares: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("least_squares: need at least two points");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("least_squares: x values are all equal");

  LinearFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = y[i] - fit.intercept - fit.slope * x[i];
      rss += e * e;
    }
    fit.slope_stderr = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

LinearFit log_log_fit(std::span<const std::uint64_t> n, std::span<const double> y) {
  if (n.size() != y.size()) throw std::invalid_argument("log_log_fit: length mismatch");
  std::vector<double> lx, ly;
  lx.reserve(n.size());
  ly.reserve(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(y[i] > 0.0)) throw std::invalid_argument("log_log_fit: nonpositive ordinate");
    lx.push_back(std::log(static_cast<double>(n[i])));
    ly.push_back(std::log(y[i]));
  }
  return least_squares(lx, ly);
}

}  // namespace assoc
