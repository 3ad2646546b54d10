#pragma once

// Data-parallel kernels. Every kernel has a serial reference in
// assoc::serial and an OpenMP version in assoc::parallel; the two are
// required to agree bit for bit (tests/unit/test_kernels.cpp), which is what
// makes results independent of the thread count.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "assoclab/random.hpp"

namespace assoc {

// Partial sums of cos(t x) and sin(t x) over a sample.
struct TrigSums {
  double cos_sum = 0.0;
  double sin_sum = 0.0;
  double cos_sq_sum = 0.0;
  double sin_sq_sum = 0.0;
};

namespace detail {

// Summation block for order-fixed reductions. Part of the numerical contract.
inline constexpr std::size_t kReduceBlock = 4096;

// c_j = sum_k a_k a_{k+j} (innovation variance applied by the caller).
inline double lag_product(std::span<const double> a, std::size_t j) {
  double s = 0.0;
  for (std::size_t k = 0; k + j < a.size(); ++k) s += a[k] * a[k + j];
  return s;
}

inline TrigSums trig_block(std::span<const double> x, double t) {
  TrigSums s;
  for (double v : x) {
    const double c = std::cos(t * v);
    const double si = std::sin(t * v);
    s.cos_sum += c;
    s.sin_sum += si;
    s.cos_sq_sum += c * c;
    s.sin_sq_sum += si * si;
  }
  return s;
}

inline void accumulate(TrigSums& into, const TrigSums& part) {
  into.cos_sum += part.cos_sum;
  into.sin_sum += part.sin_sum;
  into.cos_sq_sum += part.cos_sq_sum;
  into.sin_sq_sum += part.sin_sq_sum;
}

}  // namespace detail

namespace serial {

// Unscaled lag products c_0..c_max_lag of a weight vector.
inline std::vector<double> lag_products(std::span<const double> a, std::size_t max_lag) {
  std::vector<double> out(max_lag + 1, 0.0);
  for (std::size_t j = 0; j <= max_lag; ++j) out[j] = detail::lag_product(a, j);
  return out;
}

inline TrigSums trig_sums(std::span<const double> x, double t) {
  TrigSums total;
  for (std::size_t b = 0; b < x.size(); b += detail::kReduceBlock) {
    const std::size_t len = std::min(detail::kReduceBlock, x.size() - b);
    detail::accumulate(total, detail::trig_block(x.subspan(b, len), t));
  }
  return total;
}

// Runs f(replicate, engine) for replicate = 0..R-1 and stores the results in
// replicate order.
template <typename F>
std::vector<double> collect(std::uint64_t replicates, std::uint64_t master_seed, F&& f) {
  std::vector<double> out(replicates);
  for (std::uint64_t r = 0; r < replicates; ++r) {
    Engine rng = replicate_engine(master_seed, r);
    out[r] = f(r, rng);
  }
  return out;
}

// Row-valued variant: f(replicate, engine, row) fills `width` doubles.
template <typename F>
std::vector<double> collect_rows(std::uint64_t replicates, std::size_t width,
                                 std::uint64_t master_seed, F&& f) {
  std::vector<double> out(replicates * width);
  for (std::uint64_t r = 0; r < replicates; ++r) {
    Engine rng = replicate_engine(master_seed, r);
    f(r, rng, std::span<double>(out.data() + r * width, width));
  }
  return out;
}

}  // namespace serial

namespace parallel {

inline std::vector<double> lag_products(std::span<const double> a, std::size_t max_lag) {
  std::vector<double> out(max_lag + 1, 0.0);
  const auto n = static_cast<std::int64_t>(max_lag + 1);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t j = 0; j < n; ++j) out[j] = detail::lag_product(a, static_cast<std::size_t>(j));
  return out;
}

inline TrigSums trig_sums(std::span<const double> x, double t) {
  const std::size_t nblocks = (x.size() + detail::kReduceBlock - 1) / detail::kReduceBlock;
  std::vector<TrigSums> partial(nblocks);
  const auto nb = static_cast<std::int64_t>(nblocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::size_t start = static_cast<std::size_t>(b) * detail::kReduceBlock;
    const std::size_t len = std::min(detail::kReduceBlock, x.size() - start);
    partial[b] = detail::trig_block(x.subspan(start, len), t);
  }
  TrigSums total;
  for (const auto& p : partial) detail::accumulate(total, p);
  return total;
}

// `chunk` is a scheduling hint only.
template <typename F>
std::vector<double> collect(std::uint64_t replicates, std::uint64_t master_seed, F&& f,
                            int chunk = 64) {
  std::vector<double> out(replicates);
  const auto n = static_cast<std::int64_t>(replicates);
  chunk = std::max(chunk, 1);
#pragma omp parallel for schedule(dynamic, chunk)
  for (std::int64_t r = 0; r < n; ++r) {
    Engine rng = replicate_engine(master_seed, static_cast<std::uint64_t>(r));
    out[r] = f(static_cast<std::uint64_t>(r), rng);
  }
  return out;
}

template <typename F>
std::vector<double> collect_rows(std::uint64_t replicates, std::size_t width,
                                 std::uint64_t master_seed, F&& f, int chunk = 64) {
  std::vector<double> out(replicates * width);
  const auto n = static_cast<std::int64_t>(replicates);
  chunk = std::max(chunk, 1);
#pragma omp parallel for schedule(dynamic, chunk)
  for (std::int64_t r = 0; r < n; ++r) {
    Engine rng = replicate_engine(master_seed, static_cast<std::uint64_t>(r));
    f(static_cast<std::uint64_t>(r), rng,
      std::span<double>(out.data() + static_cast<std::size_t>(r) * width, width));
  }
  return out;
}

}  // namespace parallel

}  // namespace assoc
