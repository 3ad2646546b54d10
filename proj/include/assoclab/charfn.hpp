#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "assoclab/block_scheme.hpp"
#include "assoclab/covariance.hpp"
#include "assoclab/model.hpp"
#include "assoclab/monte_carlo.hpp"

namespace assoc {

struct CFEstimate {
  double t = 0.0;
  std::complex<double> value{1.0, 0.0};
  double std_error = 0.0;          // larger of the two componentwise standard errors
  double modulus_std_error = 0.0;  // sqrt(var cos + var sin) / sqrt(R)
};

// Esseen smoothing inequality with
//   sup|F - Phi| <= integral_constant * int_{-T}^{T} |f - phi|/|t| dt + tail_constant / T,
// tail_constant = 24 sup Phi' / pi.
struct SmoothingParameters {
  double T = 1.0;
  double integral_constant = std::numbers::inv_pi;
  double tail_constant = 24.0 / (std::numbers::pi * std::sqrt(2.0 * std::numbers::pi));

  // T = (log n)^b n^{alpha/2}, the truncation frequency used for block sums.
  static SmoothingParameters for_scheme(std::uint64_t n, double alpha, double log_power = -0.1);
};

CFEstimate empirical_cf(std::span<const double> samples, double t);

// Exact Cov(Y_j, Y_k) for 1-based block indices.
double block_covariance(const CovarianceProfile& profile, const BlockScheme& scheme, std::uint64_t j,
                        std::uint64_t k);
double block_covariance(const MAModel& model, const BlockScheme& scheme, std::uint64_t j,
                        std::uint64_t k);

struct CovarianceIdentity {
  double lhs = 0.0;  // sum_{j>k} Cov(Y_j, Y_k), pair by pair
  double rhs = 0.0;  // (s^2_{m p} - m s^2_p) / 2
};
CovarianceIdentity block_covariance_identity(const MAModel& model, const BlockScheme& scheme);

struct NewmanResult {
  // |E exp(i sum t_j Y_j) - prod_j E exp(i t_j Y_j)| from one Monte Carlo run;
  // std_error by the delta method.
  MonteCarloEstimate lhs;
  // sum_{i<j} |t_i||t_j| Cov(Y_i, Y_j), exact.
  double rhs = 0.0;
};
NewmanResult newman_check(const MAModel& model, const BlockScheme& scheme,
                          std::span<const double> t_vec, const MCConfig& mc);

struct CFProductDeviation {
  // |phi_1(t/s_n)^{m_n} - gaussian_target|, std_error by the delta method.
  MonteCarloEstimate deviation;
  double gaussian_target = 1.0;  // exp(-m_n t^2 s_{p_n}^2 / (2 s_n^2))
  CFEstimate marginal;           // phi_1 at t/s_n
};
CFProductDeviation cf_product_deviation(const MAModel& model, const BlockScheme& scheme, double t,
                                        const MCConfig& mc);

// Smoothing-inequality bound on sup|F_R - Phi| for the empirical law of
// `samples`. Throws QuadratureError when the adaptive quadrature does not
// reach `rel_tol`.
double esseen_distance_bound(std::span<const double> samples, const SmoothingParameters& params,
                             double rel_tol = 1e-6);

}  // namespace assoc
