#include <omp.h>

#include <catch_amalgamated.hpp>
#include <cstring>
#include <random>
#include <vector>

#include "assoclab/kernels.hpp"
#include "assoclab/model.hpp"
#include "assoclab/monte_carlo.hpp"
#include "assoclab/simulate.hpp"

using namespace assoc;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  Engine rng{seed};
  std::normal_distribution<double> z;
  std::vector<double> x(n);
  for (auto& v : x) v = 3.0 * z(rng);
  return x;
}

struct ThreadGuard {
  int saved = omp_get_max_threads();
  ~ThreadGuard() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_CASE("lag products agree bit for bit") {
  ThreadGuard guard;
  const auto a = power_weights(1.3, 3000);
  const auto ref = serial::lag_products(a, a.size() - 1);
  for (int threads : {1, 2, 3, 8}) {
    omp_set_num_threads(threads);
    CHECK(same_bits(parallel::lag_products(a, a.size() - 1), ref));
  }
  CHECK(ref[0] == Catch::Approx(detail::lag_product(a, 0)));
}

TEST_CASE("trig sums agree bit for bit across thread counts") {
  ThreadGuard guard;
  const auto x = noise(3 * detail::kReduceBlock + 17, 5);
  const TrigSums ref = serial::trig_sums(x, 0.37);
  for (int threads : {1, 2, 5}) {
    omp_set_num_threads(threads);
    const TrigSums p = parallel::trig_sums(x, 0.37);
    CHECK(same_bits(p.cos_sum, ref.cos_sum));
    CHECK(same_bits(p.sin_sum, ref.sin_sum));
    CHECK(same_bits(p.cos_sq_sum, ref.cos_sq_sum));
    CHECK(same_bits(p.sin_sq_sum, ref.sin_sq_sum));
  }
}

TEST_CASE("collect is independent of schedule and thread count") {
  ThreadGuard guard;
  const MAModel model(geometric_weights(0.5, 16), InnovationLaw::centered_exponential(1.0));
  const WindowSampler window(model, 100);
  auto f = [&](std::uint64_t, Engine& rng) { return window.draw(rng); };
  const auto ref = serial::collect(2000, 99, f);
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    for (int chunk : {1, 7, 64}) CHECK(same_bits(parallel::collect(2000, 99, f, chunk), ref));
  }
}

TEST_CASE("collect_rows matches the serial reference") {
  ThreadGuard guard;
  auto f = [](std::uint64_t r, Engine& rng, std::span<double> row) {
    std::normal_distribution<double> z;
    for (auto& v : row) v = z(rng) + static_cast<double>(r);
  };
  const auto ref = serial::collect_rows(500, 3, 11, f);
  omp_set_num_threads(3);
  CHECK(same_bits(parallel::collect_rows(500, 3, 11, f, 5), ref));
}

TEST_CASE("mc_run contract") {
  SECTION("constant estimator") {
    const auto e = mc_run([](std::uint64_t, Engine&) { return 1.0; }, MCConfig{100, 3});
    CHECK(e.value == 1.0);
    CHECK(e.std_error == 0.0);
    CHECK(e.replicates == 100);
    CHECK(e.master_seed == 3);
  }
  SECTION("repeatable and schedule independent") {
    auto f = [](std::uint64_t, Engine& rng) { return std::normal_distribution<double>{}(rng); };
    const MCConfig a{5000, 17, 1}, b{5000, 17, 64};
    const auto x = mc_run(f, a), y = mc_run(f, a), z = mc_run(f, b), s = serial::mc_run(f, a);
    CHECK(same_bits(x.value, y.value));
    CHECK(same_bits(x.value, z.value));
    CHECK(same_bits(x.value, s.value));
    CHECK(same_bits(x.std_error, s.std_error));
  }
  SECTION("zero replicates") {
    CHECK_THROWS_AS(mc_run([](std::uint64_t, Engine&) { return 0.0; }, MCConfig{0, 1}), ConfigError);
  }
}

TEST_CASE("stream seeds are distinct") {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t r = 0; r < 1000; ++r) seeds.push_back(stream_seed(42, r));
  std::sort(seeds.begin(), seeds.end());
  CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
  CHECK(derive_seed(42, 1) != derive_seed(42, 2));
  CHECK(stream_seed(1, 0) != stream_seed(2, 0));
}
