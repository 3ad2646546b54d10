#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "assoclab/block_scheme.hpp"
#include "assoclab/fit.hpp"
#include "assoclab/model.hpp"
#include "assoclab/monte_carlo.hpp"

namespace assoc {

// sup_x |F_R(x) - Phi(x)| for the empirical law of `samples`. Throws
// std::invalid_argument on empty input.
double ks_distance(std::span<const double> samples);
// Same, for samples already sorted ascending.
double ks_distance_sorted(std::span<const double> sorted);
// sup_x |F_a(x) - G_b(x)|.
double two_sample_ks(std::span<const double> a, std::span<const double> b);

// Approximate 99th percentiles of the one- and two-sample KS null laws.
double ks_noise_floor(std::uint64_t replicates);
double two_sample_noise_floor(std::uint64_t replicates_a, std::uint64_t replicates_b);
// 99th percentile of two_sample_ks between resamples (with replacement) of
// sizes a and b drawn from one pooled sample, over `trials` repetitions.
double resampling_noise_floor(std::span<const double> pool, std::uint64_t a, std::uint64_t b,
                              std::uint64_t trials, std::uint64_t seed);

struct RateExperimentResult {
  std::vector<std::uint64_t> n_grid;
  std::vector<double> distances;
  LinearFit fit;  // log distance against log n
  std::uint64_t replicates = 0;
  double q = 3.0;
  double theta = 0.0;
  double theoretical_exponent = 0.0;
  bool exact_normal = false;  // gaussian innovations: S_n / s_n is exactly N(0,1)
};

// KS distance of S_n / s_n to Phi for each n, with s_n exact. Every n reuses
// the same replicate streams. theta defaults to the model's fitted decay
// exponent. Throws MomentError when q is not below the innovation's q_max.
RateExperimentResult clt_rate_experiment(const MAModel& model, std::span<const std::uint64_t> n_grid,
                                         const MCConfig& mc, double q = 3.0,
                                         std::optional<double> theta = std::nullopt);

// Two-sample KS distance between sum_j Y_j / s_n and sum_j Y*_j / s_n, the
// second sample drawn from an independent master seed.
double coupling_distance(const MAModel& model, const BlockScheme& scheme, const MCConfig& mc);

// P(|Y_{m+1}| > n^{-3 alpha/8} s_n); exactly 0 when the remainder is empty.
MonteCarloEstimate remainder_tail(const MAModel& model, const BlockScheme& scheme, const MCConfig& mc);
double remainder_threshold(const MAModel& model, const BlockScheme& scheme);

struct ModDevResult {
  MonteCarloEstimate ratio;  // P(S_n > x_n s_n) / (1 - Phi(x_n))
  MonteCarloEstimate exceedance;
  double x_n = 0.0;
  double gaussian_tail = 0.0;
  bool in_regime = false;  // lambda < (q_max - 2)/2
};

// x_n = sqrt(lambda log n). Throws PrecisionError when fewer than 100
// exceedances are expected at the configured replicate count.
ModDevResult moddev_ratio(const MAModel& model, std::uint64_t n, double lambda, const MCConfig& mc);

struct LambdaEstimate {
  double delta = 0.0;
  MonteCarloEstimate value;
};

inline constexpr double kFrolovDeltas[] = {0.5, 1.0};
inline std::span<const double> default_frolov_deltas() { return kFrolovDeltas; }

struct FrolovDiagnostics {
  std::uint64_t n = 0;
  double B_n = 0.0;         // m_n s_{p_n}^2
  MonteCarloEstimate M_n;   // sum_k E[(Y_k^+)^q]
  double L_n = 0.0;         // M_n / B_n^{q/2}
  double x_n = 0.0;
  std::vector<LambdaEstimate> lambda_fn;  // Lambda_n(x^4, x^5, delta) at x = x_n
  double e6 = 0.0;          // x^2 - 2 log(1/L_n) - (q-1) log log(1/L_n); NaN when L_n >= 1/e
};

// Diagnostics for the coupling blocks Y*_1..Y*_m of `scheme`. Each replicate
// draws all m blocks and sums the per-block terms, so M_n and Lambda_n are
// unbiased with variance shrinking in m.
FrolovDiagnostics frolov_diagnostics(const MAModel& model, const BlockScheme& scheme, double q,
                                     double lambda, const MCConfig& mc,
                                     std::span<const double> deltas = default_frolov_deltas());

struct FrolovSweep {
  std::vector<FrolovDiagnostics> points;
  LinearFit log_L_fit;  // log L_n against log n
};

FrolovSweep frolov_sweep(const MAModel& model, std::span<const std::uint64_t> n_grid, double alpha,
                         double q, double lambda, const MCConfig& mc);

}  // namespace assoc
