#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "assoclab/model.hpp"

namespace assoc {

/// Exact second-order structure of an MA model.
///
/// Free functions compute each quantity directly from the weights in O(K)
/// or O(nK); CovarianceProfile tabulates c_0..c_K once and answers the same
/// questions from the table. The two routes are cross-checked in tests.

// c_j = Var(Z) * sum_k a_k a_{k+j}; zero for j > K.
double autocovariance(const MAModel& model, std::size_t j);
// s_n^2 = n c_0 + 2 sum_{j=1}^{n-1} (n-j) c_j.
double partial_sum_variance(const MAModel& model, std::uint64_t n);
// Cox-Grimmett coefficient u(n) = sum_{j>=n} c_j, via tail sums of the weights.
double cox_grimmett(const MAModel& model, std::uint64_t n);
// sigma^2 = c_0 + 2 sum_{j>=1} c_j; cross-asserted against Var(Z) (sum a_k)^2.
// Throws ConsistencyError when the two disagree beyond 1e-10 relative.
double long_run_variance(const MAModel& model);

// Fitted decay exponents. +infinity marks an exactly vanishing residual
// ("exact": s_n^2 = n sigma^2 identically, or u(n) = 0 on the grid).
struct DecayExponents {
  double theta = std::numeric_limits<double>::infinity();
  double delta = std::numeric_limits<double>::infinity();
  bool theta_exact() const noexcept { return theta == std::numeric_limits<double>::infinity(); }
  bool delta_exact() const noexcept { return delta == std::numeric_limits<double>::infinity(); }
};

// Least-squares slopes of log|s_n^2/(n sigma^2) - 1| and log u(n) against
// log n, negated. n_grid must be increasing with at least 4 points.
DecayExponents decay_exponents(const MAModel& model, std::span<const std::uint64_t> n_grid);

// 2^6, 2^7, ..., 2^12.
std::vector<std::uint64_t> default_decay_grid();

class CovarianceProfile {
 public:
  explicit CovarianceProfile(const MAModel& model);
  CovarianceProfile(const MAModel& model, std::span<const std::uint64_t> decay_grid);

  double sigma1_sq() const noexcept { return autocov_[0]; }
  double autocov(std::size_t j) const noexcept { return j < autocov_.size() ? autocov_[j] : 0.0; }
  std::span<const double> autocov_table() const noexcept { return autocov_; }
  double sigma_sq() const noexcept { return sigma_sq_; }
  double theta() const noexcept { return decay_.theta; }
  double delta() const noexcept { return decay_.delta; }

  double partial_sum_variance(std::uint64_t n) const;
  double cox_grimmett(std::uint64_t n) const;
  // sum_{j=1}^{n-1} j c_j
  double weighted_lag_sum(std::uint64_t n) const;

 private:
  void build(const MAModel& model);

  std::vector<double> autocov_;  // c_0..c_K
  std::vector<double> tail_;     // tail_[j] = sum_{i>=j} c_i
  double sigma_sq_ = 0.0;
  DecayExponents decay_;
};

}  // namespace assoc
