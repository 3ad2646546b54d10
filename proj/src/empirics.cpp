#include "assoclab/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <random>
#include <stdexcept>

#include "assoclab/covariance.hpp"
#include "assoclab/errors.hpp"
#include "assoclab/normal.hpp"
#include "assoclab/rates.hpp"
#include "assoclab/simulate.hpp"

namespace assoc {
namespace {

// Tags for sub-experiments that need a stream independent of the main one.
constexpr std::uint64_t kCouplingTag = 0xC0;

void require_increasing(std::span<const std::uint64_t> n_grid, std::uint64_t min_n) {
  if (n_grid.empty()) throw DomainError("n_grid is empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < min_n) {
      std::ostringstream os;
      os << "n_grid entry " << n_grid[i] << " is below the minimum " << min_n;
      throw DomainError(os.str());
    }
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) throw DomainError("n_grid must be strictly increasing");
  }
}

}  // namespace

double ks_distance_sorted(std::span<const double> sorted) {
  if (sorted.empty()) throw std::invalid_argument("ks_distance needs at least one sample");
  const double R = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double F = normal_cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / R - F;
    const double below = F - static_cast<double>(i) / R;
    d = std::max({d, above, below});
  }
  return d;
}

double ks_distance(std::span<const double> samples) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  return ks_distance_sorted(sorted);
}

double two_sample_ks(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("two_sample_ks needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_noise_floor(std::uint64_t replicates) {
  return 1.63 / std::sqrt(static_cast<double>(replicates));
}

double two_sample_noise_floor(std::uint64_t replicates_a, std::uint64_t replicates_b) {
  const double ra = static_cast<double>(replicates_a), rb = static_cast<double>(replicates_b);
  return 1.63 * std::sqrt((ra + rb) / (ra * rb));
}

double resampling_noise_floor(std::span<const double> pool, std::uint64_t a, std::uint64_t b,
                              std::uint64_t trials, std::uint64_t seed) {
  if (pool.empty() || a == 0 || b == 0 || trials == 0) {
    throw std::invalid_argument("resampling_noise_floor needs a pool, sample sizes and trials");
  }
  auto stats = mc_collect(
      [&](std::uint64_t, Engine& rng) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        std::vector<double> x(a), y(b);
        for (auto& v : x) v = pool[pick(rng)];
        for (auto& v : y) v = pool[pick(rng)];
        return two_sample_ks(x, y);
      },
      MCConfig{trials, seed});
  std::sort(stats.begin(), stats.end());
  const auto idx = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(trials))) - 1;
  return stats[std::min(idx, stats.size() - 1)];
}

RateExperimentResult clt_rate_experiment(const MAModel& model, std::span<const std::uint64_t> n_grid,
                                         const MCConfig& mc, double q, std::optional<double> theta) {
  require_increasing(n_grid, 16);
  if (n_grid.size() < 2) throw DomainError("clt_rate_experiment needs at least two grid points");
  model.innovation().require_moment(q);
  require_replicates(mc);

  RateExperimentResult out;
  out.n_grid.assign(n_grid.begin(), n_grid.end());
  out.replicates = mc.replicates;
  out.q = q;
  out.theta = theta ? *theta : CovarianceProfile(model).theta();
  out.theoretical_exponent = clt_rate_exponent(q, out.theta).exponent;
  out.exact_normal = model.innovation().is_gaussian();

  for (std::uint64_t n : n_grid) {
    const double s_n = std::sqrt(partial_sum_variance(model, n));
    const WindowSampler window(model, n);
    auto samples = mc_collect([&](std::uint64_t, Engine& rng) { return window.draw(rng) / s_n; }, mc);
    std::sort(samples.begin(), samples.end());
    out.distances.push_back(ks_distance_sorted(samples));
  }
  out.fit = log_log_fit(out.n_grid, out.distances);
  return out;
}

double coupling_distance(const MAModel& model, const BlockScheme& scheme, const MCConfig& mc) {
  const double s_n = std::sqrt(partial_sum_variance(model, scheme.n));
  // sum_j Y_j is the sum of the first m p observations.
  const WindowSampler joint(model, scheme.covered());
  const auto dependent =
      mc_collect([&](std::uint64_t, Engine& rng) { return joint.draw(rng) / s_n; }, mc);

  const WindowSampler block(model, scheme.block_len);
  const auto independent = mc_collect(
      [&](std::uint64_t, Engine& rng) {
        double s = 0.0;
        for (std::uint64_t j = 0; j < scheme.block_count; ++j) s += block.draw(rng);
        return s / s_n;
      },
      mc.with_seed(derive_seed(mc.master_seed, kCouplingTag)));
  return two_sample_ks(dependent, independent);
}

double remainder_threshold(const MAModel& model, const BlockScheme& scheme) {
  const double n = static_cast<double>(scheme.n);
  return std::pow(n, -3.0 * scheme.alpha / 8.0) * std::sqrt(partial_sum_variance(model, scheme.n));
}

MonteCarloEstimate remainder_tail(const MAModel& model, const BlockScheme& scheme, const MCConfig& mc) {
  require_replicates(mc);
  if (scheme.remainder_len == 0) {
    MonteCarloEstimate e;
    e.replicates = mc.replicates;
    e.master_seed = mc.master_seed;
    return e;
  }
  const double threshold = remainder_threshold(model, scheme);
  const WindowSampler rem(model, scheme.remainder_len);
  return mc_run(
      [&](std::uint64_t, Engine& rng) { return std::fabs(rem.draw(rng)) > threshold ? 1.0 : 0.0; }, mc);
}

ModDevResult moddev_ratio(const MAModel& model, std::uint64_t n, double lambda, const MCConfig& mc) {
  if (!(lambda >= 0.0)) throw DomainError("lambda must be nonnegative");
  if (n < 2) throw DomainError("moddev_ratio needs n >= 2");
  require_replicates(mc);

  ModDevResult out;
  out.x_n = std::sqrt(lambda * std::log(static_cast<double>(n)));
  out.gaussian_tail = normal_sf(out.x_n);
  out.in_regime = lambda < (model.innovation().q_max() - 2.0) / 2.0;

  const double expected = static_cast<double>(mc.replicates) * out.gaussian_tail;
  if (expected < 100.0) {
    std::ostringstream os;
    os << "moddev_ratio: only " << expected << " exceedances expected at R = " << mc.replicates
       << "; need R >= " << std::ceil(100.0 / out.gaussian_tail);
    throw PrecisionError(os.str());
  }

  const double level = out.x_n * std::sqrt(partial_sum_variance(model, n));
  const WindowSampler window(model, n);
  out.exceedance =
      mc_run([&](std::uint64_t, Engine& rng) { return window.draw(rng) > level ? 1.0 : 0.0; }, mc);
  out.ratio = out.exceedance;
  out.ratio.value = out.exceedance.value / out.gaussian_tail;
  out.ratio.std_error = out.exceedance.std_error / out.gaussian_tail;
  return out;
}

FrolovDiagnostics frolov_diagnostics(const MAModel& model, const BlockScheme& scheme, double q,
                                     double lambda, const MCConfig& mc, std::span<const double> deltas) {
  if (!(q > 2.0)) throw DomainError("moment order q must exceed 2");
  if (!(lambda >= 0.0)) throw DomainError("lambda must be nonnegative");
  model.innovation().require_moment(q);

  FrolovDiagnostics d;
  d.n = scheme.n;
  const double m = static_cast<double>(scheme.block_count);
  d.B_n = m * partial_sum_variance(model, scheme.block_len);
  d.x_n = std::sqrt(lambda * std::log(static_cast<double>(scheme.n)));

  const double x = d.x_n;
  const double x4 = std::pow(x, 4.0), x5 = std::pow(x, 5.0);
  const double sqrt_B = std::sqrt(d.B_n);
  // Lambda_n(t, s, delta) = t/B_n sum_k E[Y_k^2; Y_k < -delta sqrt(B_n)/s] at t = x^4, s = x^5.
  std::vector<double> cutoff;
  for (double delta : deltas) {
    cutoff.push_back(x5 > 0.0 ? -delta * sqrt_B / x5 : -std::numeric_limits<double>::infinity());
  }

  // Row layout: sum_k (Y_k^+)^q, then one Lambda_n term per delta.
  const std::size_t width = 1 + deltas.size();
  const WindowSampler block(model, scheme.block_len);
  const auto rows = mc_collect_rows(
      width,
      [&](std::uint64_t, Engine& rng, std::span<double> row) {
        std::fill(row.begin(), row.end(), 0.0);
        for (std::uint64_t k = 0; k < scheme.block_count; ++k) {
          const double y = block.draw(rng);
          if (y > 0.0) row[0] += std::pow(y, q);
          for (std::size_t i = 0; i < cutoff.size(); ++i) {
            if (y < cutoff[i]) row[1 + i] += y * y;
          }
        }
        for (std::size_t i = 0; i < cutoff.size(); ++i) row[1 + i] *= x4 / d.B_n;
      },
      mc);

  std::vector<double> column(mc.replicates);
  auto summarize_column = [&](std::size_t c) {
    for (std::size_t r = 0; r < mc.replicates; ++r) column[r] = rows[r * width + c];
    return summarize(column, mc);
  };
  d.M_n = summarize_column(0);
  for (std::size_t i = 0; i < deltas.size(); ++i) d.lambda_fn.push_back({deltas[i], summarize_column(1 + i)});

  d.L_n = d.M_n.value / std::pow(d.B_n, q / 2.0);
  const double log_inv_L = -std::log(d.L_n);
  d.e6 = log_inv_L > 1.0 ? x * x - 2.0 * log_inv_L - (q - 1.0) * std::log(log_inv_L)
                         : std::numeric_limits<double>::quiet_NaN();
  return d;
}

FrolovSweep frolov_sweep(const MAModel& model, std::span<const std::uint64_t> n_grid, double alpha,
                         double q, double lambda, const MCConfig& mc) {
  require_increasing(n_grid, 4);
  FrolovSweep out;
  std::vector<double> L;
  for (std::uint64_t n : n_grid) {
    out.points.push_back(frolov_diagnostics(model, make_block_scheme(n, alpha), q, lambda, mc));
    L.push_back(out.points.back().L_n);
  }
  if (n_grid.size() >= 2) out.log_L_fit = log_log_fit(n_grid, L);
  return out;
}

}  // namespace assoc
