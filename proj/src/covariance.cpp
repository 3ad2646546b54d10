#include "assoclab/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "assoclab/errors.hpp"
#include "assoclab/fit.hpp"
#include "assoclab/kernels.hpp"

namespace assoc {
namespace {

constexpr double kIdentityTol = 1e-10;

// T[m] = sum_{i>=m} a_i for m = 0..K+1.
std::vector<double> weight_tails(std::span<const double> a) {
  std::vector<double> t(a.size() + 1, 0.0);
  for (std::size_t m = a.size(); m-- > 0;) t[m] = t[m + 1] + a[m];
  return t;
}

std::vector<double> scaled_lag_products(const MAModel& model, std::size_t max_lag) {
  auto table = parallel::lag_products(model.weights(), max_lag);
  const double var = model.innovation().variance();
  for (double& c : table) c *= var;
  return table;
}

double sum_partial_variance(std::span<const double> c, std::uint64_t n) {
  const double nd = static_cast<double>(n);
  double cross = 0.0;
  const std::uint64_t last = std::min<std::uint64_t>(n - 1, c.size() - 1);
  for (std::uint64_t j = 1; j <= last; ++j) cross += (nd - static_cast<double>(j)) * c[j];
  return nd * c[0] + 2.0 * cross;
}

bool negligible(double residual) { return !(std::fabs(residual) > 64.0 * 2.220446049250313e-16); }

// Negated log-log slope over the points with a positive value; +inf when
// fewer than two such points remain.
double decay_slope(std::span<const std::uint64_t> grid, std::span<const double> values) {
  std::vector<std::uint64_t> n;
  std::vector<double> v;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!negligible(values[i])) {
      n.push_back(grid[i]);
      v.push_back(std::fabs(values[i]));
    }
  }
  if (n.size() < 2) return std::numeric_limits<double>::infinity();
  return -log_log_fit(n, v).slope;
}

void check_grid(std::span<const std::uint64_t> n_grid) {
  if (n_grid.size() < 4) throw DomainError("decay_exponents needs at least 4 grid points");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1 || (i > 0 && n_grid[i] <= n_grid[i - 1])) {
      throw DomainError("decay_exponents grid must be positive and strictly increasing");
    }
  }
}

}  // namespace

double autocovariance(const MAModel& model, std::size_t j) {
  if (j > model.order()) return 0.0;
  return model.innovation().variance() * detail::lag_product(model.weights(), j);
}

double partial_sum_variance(const MAModel& model, std::uint64_t n) {
  if (n < 1) throw DomainError("partial_sum_variance needs n >= 1");
  const std::size_t max_lag = static_cast<std::size_t>(std::min<std::uint64_t>(n - 1, model.order()));
  const auto c = scaled_lag_products(model, max_lag);
  return sum_partial_variance(c, n);
}

double cox_grimmett(const MAModel& model, std::uint64_t n) {
  if (n < 1) throw DomainError("cox_grimmett needs n >= 1");
  if (n > model.order()) return 0.0;
  const auto a = model.weights();
  const auto tails = weight_tails(a);
  double s = 0.0;
  for (std::size_t k = 0; k + n < a.size(); ++k) s += a[k] * tails[k + n];
  return model.innovation().variance() * s;
}

double long_run_variance(const MAModel& model) {
  const double by_covariances = autocovariance(model, 0) + 2.0 * cox_grimmett(model, 1);
  const double sum_a = model.weight_sum();
  const double by_weights = model.innovation().variance() * sum_a * sum_a;
  const double scale = std::max(std::fabs(by_covariances), std::fabs(by_weights));
  if (std::fabs(by_covariances - by_weights) > kIdentityTol * scale) {
    std::ostringstream os;
    os.precision(17);
    os << "long-run variance mismatch: covariance sum " << by_covariances << " vs Var(Z)(sum a)^2 "
       << by_weights;
    throw ConsistencyError(os.str());
  }
  return by_covariances;
}

std::vector<std::uint64_t> default_decay_grid() {
  std::vector<std::uint64_t> g;
  for (int e = 6; e <= 12; ++e) g.push_back(std::uint64_t{1} << e);
  return g;
}

DecayExponents decay_exponents(const MAModel& model, std::span<const std::uint64_t> n_grid) {
  check_grid(n_grid);
  const std::size_t max_lag =
      static_cast<std::size_t>(std::min<std::uint64_t>(n_grid.back() - 1, model.order()));
  const auto c = scaled_lag_products(model, max_lag);
  const double sigma_sq = long_run_variance(model);

  std::vector<double> residual, tail;
  residual.reserve(n_grid.size());
  tail.reserve(n_grid.size());
  for (std::uint64_t n : n_grid) {
    const double sn2 = sum_partial_variance(c, n);
    residual.push_back(sn2 / (static_cast<double>(n) * sigma_sq) - 1.0);
    tail.push_back(cox_grimmett(model, n));
  }
  return {decay_slope(n_grid, residual), decay_slope(n_grid, tail)};
}

CovarianceProfile::CovarianceProfile(const MAModel& model) {
  build(model);
  const auto grid = default_decay_grid();
  decay_ = decay_exponents(model, grid);
}

CovarianceProfile::CovarianceProfile(const MAModel& model, std::span<const std::uint64_t> decay_grid) {
  build(model);
  decay_ = decay_exponents(model, decay_grid);
}

void CovarianceProfile::build(const MAModel& model) {
  autocov_ = scaled_lag_products(model, model.order());
  tail_.assign(autocov_.size() + 1, 0.0);
  for (std::size_t j = autocov_.size(); j-- > 0;) tail_[j] = tail_[j + 1] + autocov_[j];
  sigma_sq_ = long_run_variance(model);
}

double CovarianceProfile::partial_sum_variance(std::uint64_t n) const {
  if (n < 1) throw DomainError("partial_sum_variance needs n >= 1");
  return sum_partial_variance(autocov_, n);
}

double CovarianceProfile::cox_grimmett(std::uint64_t n) const {
  if (n < 1) throw DomainError("cox_grimmett needs n >= 1");
  return n < tail_.size() ? tail_[n] : 0.0;
}

double CovarianceProfile::weighted_lag_sum(std::uint64_t n) const {
  double s = 0.0;
  const std::uint64_t last = std::min<std::uint64_t>(n == 0 ? 0 : n - 1, autocov_.size() - 1);
  for (std::uint64_t j = 1; j <= last; ++j) s += static_cast<double>(j) * autocov_[j];
  return s;
}

}  // namespace assoc
