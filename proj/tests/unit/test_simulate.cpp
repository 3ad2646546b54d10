#include <catch_amalgamated.hpp>
#include <cmath>
#include <numeric>
#include <vector>

#include "assoclab/block_scheme.hpp"
#include "assoclab/covariance.hpp"
#include "assoclab/empirics.hpp"
#include "assoclab/errors.hpp"
#include "assoclab/monte_carlo.hpp"
#include "assoclab/simulate.hpp"

using namespace assoc;

namespace {

const MAModel kGeo(geometric_weights(0.5, 32), InnovationLaw::centered_exponential(1.0));

// Mean of f over replicates with its standard error.
template <typename F>
MonteCarloEstimate estimate(F&& f, std::uint64_t R, std::uint64_t seed = 77) {
  return mc_run(f, MCConfig{R, seed});
}

}  // namespace

TEST_CASE("block scheme geometry") {
  const auto a = make_block_scheme(1000, 0.5);
  CHECK(a.block_len == 31);
  CHECK(a.block_count == 32);
  CHECK(a.remainder_len == 8);
  const auto b = make_block_scheme(100, 0.99);
  CHECK(b.block_len == 1);
  CHECK(b.block_count == 100);
  CHECK(b.remainder_len == 0);
  CHECK(make_block_scheme(4096, 0.5).block_len == 64);
  CHECK_THROWS_AS(make_block_scheme(10, 0.1), SchemeError);
  CHECK_THROWS_AS(make_block_scheme(100, 0.0), SchemeError);
  CHECK_THROWS_AS(make_block_scheme(100, 1.0), SchemeError);
  for (std::uint64_t n = 64; n < 5000; n = n * 5 / 3) {
    for (double alpha : {0.3, 0.5, 0.8}) {
      const auto s = make_block_scheme(n, alpha);
      CHECK(s.remainder_len <= s.block_len);
      CHECK(s.block_count >= 2);
      CHECK(2 * s.block_len < n);
      CHECK(s.covered() + s.remainder_len == n);
    }
  }
}

TEST_CASE("block sums") {
  BlockScheme s{5, 0.5, 2, 2, 1};
  const std::vector<double> path = {1, 2, 3, 4, 5};
  const auto b = block_sums(path, s);
  CHECK(b.blocks == std::vector<double>{3, 7});
  CHECK(b.remainder == 5);
  const auto z = block_sums(std::vector<double>(5, 0.0), s);
  CHECK(z.blocks == std::vector<double>{0, 0});
  CHECK(z.remainder == 0);
  CHECK_THROWS_AS(block_sums(std::vector<double>(4, 1.0), s), SchemeError);
}

TEST_CASE("blocks reconstruct S_n, and prefix-sum blocks match path blocks") {
  const auto scheme = make_block_scheme(1000, 0.4);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto path = sample_path(kGeo, scheme.n, seed);
    const auto b = block_sums(path, scheme);
    double total = 0.0;
    for (double y : b.blocks) total += y;
    total += b.remainder;
    const double direct = std::accumulate(path.begin(), path.end(), 0.0);
    CHECK(total == Catch::Approx(direct).epsilon(1e-12).margin(1e-10));

    Engine rng{seed};
    const auto fast = path_block_sums(kGeo, scheme, rng);
    for (std::size_t j = 0; j < b.blocks.size(); ++j) {
      CHECK(fast.blocks[j] == Catch::Approx(b.blocks[j]).epsilon(1e-10).margin(1e-10));
    }
    CHECK(fast.remainder == Catch::Approx(b.remainder).epsilon(1e-10).margin(1e-10));
  }
}

TEST_CASE("sample paths are deterministic") {
  CHECK(sample_path(kGeo, 50, 9) == sample_path(kGeo, 50, 9));
  CHECK(sample_path(kGeo, 50, 9) != sample_path(kGeo, 50, 10));
}

TEST_CASE("path moments match the exact covariances") {
  const std::uint64_t R = 1000000;
  const MAModel iid({1.0}, InnovationLaw::standard_gaussian());
  const auto mean = estimate([&](std::uint64_t, Engine& rng) { return sample_path(iid, 1, rng)[0]; }, R);
  CHECK(std::fabs(mean.value) <= 3.0 * mean.std_error);

  const CovarianceProfile prof(kGeo);
  const auto var = estimate(
      [&](std::uint64_t, Engine& rng) {
        const double x = sample_path(kGeo, 1, rng)[0];
        return x * x;
      },
      R);
  CHECK(std::fabs(var.value - prof.autocov(0)) <= 3.0 * var.std_error);
  const auto lag1 = estimate(
      [&](std::uint64_t, Engine& rng) {
        const auto x = sample_path(kGeo, 2, rng);
        return x[0] * x[1];
      },
      R);
  CHECK(std::fabs(lag1.value - prof.autocov(1)) <= 3.0 * lag1.std_error);
}

TEST_CASE("stationarity: shifted windows share first and second moments") {
  const std::uint64_t R = 200000;
  auto window_stats = [&](std::size_t shift) {
    auto sum = estimate(
        [&](std::uint64_t, Engine& rng) {
          const auto x = sample_path(kGeo, 8, rng);
          return x[shift] + x[shift + 1] + x[shift + 2];
        },
        R, 5 + shift);
    auto prod = estimate(
        [&](std::uint64_t, Engine& rng) {
          const auto x = sample_path(kGeo, 8, rng);
          return x[shift] * x[shift + 2];
        },
        R, 50 + shift);
    return std::pair{sum, prod};
  };
  const auto [s0, p0] = window_stats(0);
  const auto [s5, p5] = window_stats(5);
  CHECK(std::fabs(s0.value - s5.value) <= 4.0 * std::hypot(s0.std_error, s5.std_error));
  CHECK(std::fabs(p0.value - p5.value) <= 4.0 * std::hypot(p0.std_error, p5.std_error));
}

TEST_CASE("window sampler has the law of a path sum") {
  for (std::uint64_t L : {1ULL, 5ULL, 32ULL, 33ULL, 200ULL}) {
    const WindowSampler w(kGeo, L);
    const std::uint64_t R = 100000;
    const auto fast = mc_collect([&](std::uint64_t, Engine& rng) { return w.draw(rng); }, MCConfig{R, 1});
    const auto slow = mc_collect(
        [&](std::uint64_t, Engine& rng) {
          const auto x = sample_path(kGeo, L, rng);
          return std::accumulate(x.begin(), x.end(), 0.0);
        },
        MCConfig{R, 2});
    INFO("L = " << L);
    CHECK(two_sample_ks(fast, slow) <= two_sample_noise_floor(R, R));
    const auto var = summarize(fast, MCConfig{R, 1});
    double ss = 0.0;
    for (double v : fast) ss += v * v;
    CHECK(ss / static_cast<double>(R) ==
          Catch::Approx(partial_sum_variance(kGeo, L)).epsilon(0.03));
    CHECK(std::fabs(var.value) <= 4.0 * var.std_error);
  }
}

TEST_CASE("coupling blocks") {
  const auto scheme = make_block_scheme(256, 0.5);
  const std::uint64_t R = 200000;
  const auto rows = mc_collect_rows(
      3,
      [&](std::uint64_t, Engine& rng, std::span<double> row) {
        const auto y = coupling_block_sums(kGeo, scheme, rng);
        row[0] = y[0];
        row[1] = y[0] * y[0];
        row[2] = y[0] * y[1];
      },
      MCConfig{R, 3});
  std::vector<double> c0(R), c1(R), c2(R);
  for (std::size_t r = 0; r < R; ++r) {
    c0[r] = rows[3 * r];
    c1[r] = rows[3 * r + 1];
    c2[r] = rows[3 * r + 2];
  }
  const auto mean = summarize(c0, MCConfig{R, 3});
  const auto var = summarize(c1, MCConfig{R, 3});
  const auto cov = summarize(c2, MCConfig{R, 3});
  CHECK(std::fabs(mean.value) <= 3.0 * mean.std_error);
  CHECK(std::fabs(var.value - partial_sum_variance(kGeo, scheme.block_len)) <= 3.0 * var.std_error);
  CHECK(std::fabs(cov.value) <= 3.0 * cov.std_error);
  CHECK(coupling_block_sums(kGeo, scheme, 4) == coupling_block_sums(kGeo, scheme, 4));
  CHECK(coupling_block_sums(kGeo, scheme, 4).size() == scheme.block_count);
}

TEST_CASE("coupling marginal agrees with the first path block") {
  const auto scheme = make_block_scheme(400, 0.5);
  const std::uint64_t R = 50000;
  const auto path_y = mc_collect(
      [&](std::uint64_t, Engine& rng) { return path_block_sums(kGeo, scheme, rng).blocks[0]; }, MCConfig{R, 10});
  const auto star_y = mc_collect(
      [&](std::uint64_t, Engine& rng) { return coupling_block_sums(kGeo, scheme, rng)[0]; }, MCConfig{R, 11});
  std::vector<double> pool(path_y);
  pool.insert(pool.end(), star_y.begin(), star_y.end());
  const double floor = resampling_noise_floor(pool, R, R, 200, 12);
  CHECK(floor == Catch::Approx(two_sample_noise_floor(R, R)).epsilon(0.25));
  CHECK(two_sample_ks(path_y, star_y) <= floor);
}
