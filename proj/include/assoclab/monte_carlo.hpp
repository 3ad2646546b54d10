#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "assoclab/errors.hpp"
#include "assoclab/kernels.hpp"

namespace assoc {

struct MCConfig {
  std::uint64_t replicates = 0;
  std::uint64_t master_seed = 0;
  int chunk = 64;  // scheduling hint; never affects results

  MCConfig with_seed(std::uint64_t seed) const {
    MCConfig c = *this;
    c.master_seed = seed;
    return c;
  }
};

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;  // standard error
  std::uint64_t replicates = 0;
  std::uint64_t master_seed = 0;
};

inline void require_replicates(const MCConfig& config) {
  if (config.replicates == 0) throw ConfigError("Monte Carlo run needs at least one replicate");
}

// Mean and sd/sqrt(R), reduced in ascending replicate order.
inline MonteCarloEstimate summarize(std::span<const double> values, const MCConfig& config) {
  MonteCarloEstimate e;
  e.replicates = values.size();
  e.master_seed = config.master_seed;
  if (values.empty()) return e;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double n = static_cast<double>(values.size());
  e.value = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.value) * (v - e.value);
    e.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return e;
}

// Per-replicate values of estimator(replicate, engine) in replicate order.
// Replicate r draws only from replicate_engine(master_seed, r).
template <typename F>
std::vector<double> mc_collect(F&& estimator, const MCConfig& config) {
  require_replicates(config);
  return parallel::collect(config.replicates, config.master_seed, estimator, config.chunk);
}

template <typename F>
std::vector<double> mc_collect_rows(std::size_t width, F&& estimator, const MCConfig& config) {
  require_replicates(config);
  return parallel::collect_rows(config.replicates, width, config.master_seed, estimator,
                                config.chunk);
}

template <typename F>
MonteCarloEstimate mc_run(F&& estimator, const MCConfig& config) {
  const auto values = mc_collect(estimator, config);
  return summarize(values, config);
}

namespace serial {

template <typename F>
MonteCarloEstimate mc_run(F&& estimator, const MCConfig& config) {
  require_replicates(config);
  const auto values = collect(config.replicates, config.master_seed, estimator);
  return summarize(values, config);
}

}  // namespace serial

}  // namespace assoc
