#include "assoclab/charfn.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "assoclab/errors.hpp"
#include "assoclab/kernels.hpp"
#include "assoclab/simulate.hpp"

namespace assoc {
namespace {

void check_block_index(const BlockScheme& scheme, std::uint64_t j) {
  if (j < 1 || j > scheme.block_count) {
    std::ostringstream os;
    os << "block index " << j << " outside 1.." << scheme.block_count;
    throw std::out_of_range(os.str());
  }
}

std::complex<double> integer_power(std::complex<double> base, std::uint64_t exponent) {
  std::complex<double> result{1.0, 0.0};
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

double sample_variance_from_sums(double sum, double sq_sum, double n) {
  if (n < 2.0) return 0.0;
  const double mean = sum / n;
  return std::max(0.0, (sq_sum - n * mean * mean) / (n - 1.0));
}

}  // namespace

SmoothingParameters SmoothingParameters::for_scheme(std::uint64_t n, double alpha, double log_power) {
  SmoothingParameters p;
  p.T = truncation_frequency(n, alpha, log_power);
  return p;
}

CFEstimate empirical_cf(std::span<const double> samples, double t) {
  if (samples.empty()) throw std::invalid_argument("empirical_cf needs at least one sample");
  const TrigSums s = parallel::trig_sums(samples, t);
  const double n = static_cast<double>(samples.size());

  CFEstimate e;
  e.t = t;
  e.value = {s.cos_sum / n, s.sin_sum / n};
  const double var_c = sample_variance_from_sums(s.cos_sum, s.cos_sq_sum, n);
  const double var_s = sample_variance_from_sums(s.sin_sum, s.sin_sq_sum, n);
  e.std_error = std::sqrt(std::max(var_c, var_s) / n);
  e.modulus_std_error = std::sqrt((var_c + var_s) / n);
  return e;
}

double block_covariance(const CovarianceProfile& profile, const BlockScheme& scheme, std::uint64_t j,
                        std::uint64_t k) {
  check_block_index(scheme, j);
  check_block_index(scheme, k);
  // Index differences a - b = d + l, l in (-p, p), with multiplicity p - |l|.
  const auto p = static_cast<std::int64_t>(scheme.block_len);
  const std::int64_t d = (static_cast<std::int64_t>(j) - static_cast<std::int64_t>(k)) * p;
  double cov = 0.0;
  for (std::int64_t l = -(p - 1); l <= p - 1; ++l) {
    const auto lag = static_cast<std::size_t>(std::llabs(d + l));
    cov += static_cast<double>(p - std::llabs(l)) * profile.autocov(lag);
  }
  return cov;
}

double block_covariance(const MAModel& model, const BlockScheme& scheme, std::uint64_t j,
                        std::uint64_t k) {
  const CovarianceProfile profile(model);
  return block_covariance(profile, scheme, j, k);
}

CovarianceIdentity block_covariance_identity(const MAModel& model, const BlockScheme& scheme) {
  const CovarianceProfile profile(model);
  CovarianceIdentity id;
  for (std::uint64_t j = 2; j <= scheme.block_count; ++j) {
    for (std::uint64_t k = 1; k < j; ++k) id.lhs += block_covariance(profile, scheme, j, k);
  }
  const double s2_mp = partial_sum_variance(model, scheme.covered());
  const double s2_p = partial_sum_variance(model, scheme.block_len);
  id.rhs = 0.5 * (s2_mp - static_cast<double>(scheme.block_count) * s2_p);
  return id;
}

NewmanResult newman_check(const MAModel& model, const BlockScheme& scheme,
                          std::span<const double> t_vec, const MCConfig& mc) {
  const std::size_t m = scheme.block_count;
  if (t_vec.size() != m) {
    std::ostringstream os;
    os << "newman_check: t_vec has " << t_vec.size() << " entries, scheme has m_n = " << m;
    throw std::invalid_argument(os.str());
  }

  NewmanResult out;
  {
    const CovarianceProfile profile(model);
    for (std::uint64_t j = 2; j <= m; ++j) {
      for (std::uint64_t i = 1; i < j; ++i) {
        out.rhs += std::fabs(t_vec[i - 1]) * std::fabs(t_vec[j - 1]) *
                   block_covariance(profile, scheme, i, j);
      }
    }
  }

  // Row layout: cos/sin of the joint phase, then cos/sin of each t_j Y_j.
  const std::size_t width = 2 + 2 * m;
  const std::vector<double> t(t_vec.begin(), t_vec.end());
  const auto rows = mc_collect_rows(
      width,
      [&](std::uint64_t, Engine& rng, std::span<double> row) {
        const BlockSums y = path_block_sums(model, scheme, rng);
        double phase = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          const double pj = t[j] * y.blocks[j];
          phase += pj;
          row[2 + 2 * j] = std::cos(pj);
          row[3 + 2 * j] = std::sin(pj);
        }
        row[0] = std::cos(phase);
        row[1] = std::sin(phase);
      },
      mc);

  const std::size_t R = mc.replicates;
  const double Rd = static_cast<double>(R);
  std::vector<std::complex<double>> mean(1 + m, {0.0, 0.0});
  for (std::size_t r = 0; r < R; ++r) {
    const double* row = rows.data() + r * width;
    for (std::size_t c = 0; c <= m; ++c) mean[c] += std::complex<double>(row[2 * c], row[2 * c + 1]);
  }
  for (auto& v : mean) v /= Rd;

  // prod_{k != j} phi_k from prefix/suffix products
  std::vector<std::complex<double>> prefix(m + 1, {1.0, 0.0}), suffix(m + 1, {1.0, 0.0});
  for (std::size_t j = 0; j < m; ++j) prefix[j + 1] = prefix[j] * mean[1 + j];
  for (std::size_t j = m; j-- > 0;) suffix[j] = suffix[j + 1] * mean[1 + j];
  const std::complex<double> gap = mean[0] - prefix[m];

  // Influence function of J - prod phi_j.
  std::vector<std::complex<double>> influence(R);
  std::complex<double> infl_mean{0.0, 0.0};
  for (std::size_t r = 0; r < R; ++r) {
    const double* row = rows.data() + r * width;
    std::complex<double> v{row[0], row[1]};
    for (std::size_t j = 0; j < m; ++j) {
      v -= prefix[j] * suffix[j + 1] * std::complex<double>(row[2 + 2 * j], row[3 + 2 * j]);
    }
    influence[r] = v;
    infl_mean += v;
  }
  infl_mean /= Rd;
  double ss = 0.0;
  for (const auto& v : influence) ss += std::norm(v - infl_mean);

  out.lhs.value = std::abs(gap);
  out.lhs.std_error = R > 1 ? std::sqrt(ss / (Rd - 1.0) / Rd) : 0.0;
  out.lhs.replicates = R;
  out.lhs.master_seed = mc.master_seed;
  return out;
}

CFProductDeviation cf_product_deviation(const MAModel& model, const BlockScheme& scheme, double t,
                                        const MCConfig& mc) {
  if (!std::isfinite(t)) throw std::invalid_argument("cf_product_deviation needs a finite t");
  const double s_n2 = partial_sum_variance(model, scheme.n);
  const double s_p2 = partial_sum_variance(model, scheme.block_len);
  const double s_n = std::sqrt(s_n2);
  const double m = static_cast<double>(scheme.block_count);

  const WindowSampler block(model, scheme.block_len);
  const auto samples = mc_collect([&](std::uint64_t, Engine& rng) { return block.draw(rng); }, mc);

  CFProductDeviation out;
  out.marginal = empirical_cf(samples, t / s_n);
  out.gaussian_target = std::exp(-m * t * t * s_p2 / (2.0 * s_n2));
  const std::complex<double> product = integer_power(out.marginal.value, scheme.block_count);
  out.deviation.value = std::abs(product - out.gaussian_target);
  out.deviation.std_error =
      m * std::pow(std::abs(out.marginal.value), m - 1.0) * out.marginal.modulus_std_error;
  out.deviation.replicates = mc.replicates;
  out.deviation.master_seed = mc.master_seed;
  return out;
}

double esseen_distance_bound(std::span<const double> samples, const SmoothingParameters& params,
                             double rel_tol) {
  if (samples.empty()) throw std::invalid_argument("esseen_distance_bound needs samples");
  if (!(params.T > 0.0)) throw DomainError("smoothing parameter T must be positive");

  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(samples.size());

  // |f(t) - exp(-t^2/2)| / t; at t = 0 the analytic limit |E X| of the
  // empirical law (both CFs are 1 + O(t) there).
  auto integrand = [&](double t) {
    if (t == 0.0) return std::fabs(mean);
    const double n = static_cast<double>(samples.size());
    const TrigSums s = parallel::trig_sums(samples, t);
    const std::complex<double> f{s.cos_sum / n, s.sin_sum / n};
    return std::abs(f - std::exp(-0.5 * t * t)) / t;
  };

  // The integrand is even in t; integrate [0, T] in unit panels.
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 15>;
  const auto panels = static_cast<std::size_t>(std::ceil(params.T));
  const double width = params.T / static_cast<double>(panels);
  double integral = 0.0, error = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    double err = 0.0, pl1 = 0.0;
    const double a = width * static_cast<double>(i);
    integral += Quadrature::integrate(integrand, a, a + width, 12, rel_tol, &err, &pl1);
    error += err;
    l1 += pl1;
  }
  const double accept = std::max(100.0 * rel_tol, 1e-4) * std::max(l1, 1e-12);
  if (!std::isfinite(integral) || error > accept) {
    std::ostringstream os;
    os << "esseen_distance_bound: quadrature on [0, " << params.T << "] did not converge (estimate "
       << integral << ", error " << error << ", |f| integral " << l1 << ")";
    throw QuadratureError(os.str());
  }
  return params.integral_constant * 2.0 * integral + params.tail_constant / params.T;
}

}  // namespace assoc
