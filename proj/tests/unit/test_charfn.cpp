#include <catch_amalgamated.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "assoclab/charfn.hpp"
#include "assoclab/covariance.hpp"
#include "assoclab/empirics.hpp"
#include "assoclab/simulate.hpp"

using namespace assoc;

namespace {

std::vector<double> normals(std::size_t n, std::uint64_t seed) {
  return mc_collect([](std::uint64_t, Engine& rng) { return std::normal_distribution<double>{}(rng); },
                    MCConfig{n, seed});
}

const InnovationLaw kGauss = InnovationLaw::standard_gaussian();
const MAModel kGeo(geometric_weights(0.5, 32), kGauss);

}  // namespace

TEST_CASE("empirical characteristic function") {
  const std::vector<double> zeros(100, 0.0);
  CHECK(empirical_cf(zeros, 2.5).value == std::complex<double>(1.0, 0.0));
  const auto x = normals(1000000, 1);
  CHECK(empirical_cf(x, 0.0).value == std::complex<double>(1.0, 0.0));
  const auto e = empirical_cf(x, 1.0);
  CHECK(std::fabs(e.value.real() - std::exp(-0.5)) <= 4.0 * e.std_error);
  CHECK(std::fabs(e.value.imag()) <= 4.0 * e.std_error);
  for (double t : {0.1, 1.0, 5.0}) {
    const auto f = empirical_cf(x, t);
    CHECK(std::abs(f.value) <= 1.0 + 3.0 * f.std_error);
  }
  CHECK_THROWS_AS(empirical_cf(std::vector<double>{}, 1.0), std::invalid_argument);
}

TEST_CASE("block covariance") {
  const MAModel iid({1.0}, kGauss);
  const auto s = make_block_scheme(256, 0.5);
  CHECK(block_covariance(iid, s, 1, 3) == 0.0);
  CHECK(block_covariance(kGeo, s, 2, 2) == Catch::Approx(partial_sum_variance(kGeo, s.block_len)).epsilon(1e-12));
  CHECK_THROWS_AS(block_covariance(kGeo, s, 0, 1), std::out_of_range);
  CHECK_THROWS_AS(block_covariance(kGeo, s, 1, s.block_count + 1), std::out_of_range);

  SECTION("p = 2, adjacent blocks: four index pairs and a Monte Carlo cross-check") {
    const auto small = make_block_scheme(16, 0.75);
    REQUIRE(small.block_len == 2);
    const CovarianceProfile prof(kGeo);
    // Block 1 = {1,2}, block 2 = {3,4}: lags 2,3,1,2.
    const double exact = prof.autocov(1) + 2.0 * prof.autocov(2) + prof.autocov(3);
    CHECK(block_covariance(kGeo, small, 2, 1) == Catch::Approx(exact).epsilon(1e-14));
    const auto mc = mc_run(
        [&](std::uint64_t, Engine& rng) {
          const auto y = path_block_sums(kGeo, small, rng);
          return y.blocks[0] * y.blocks[1];
        },
        MCConfig{1000000, 4});
    CHECK(std::fabs(mc.value - exact) <= 4.0 * mc.std_error);
  }
}

TEST_CASE("block covariance identity") {
  const auto iid = block_covariance_identity(MAModel({1.0}, kGauss), make_block_scheme(100, 0.5));
  CHECK(iid.lhs == 0.0);
  CHECK(iid.rhs == 0.0);
  const auto g = block_covariance_identity(MAModel(geometric_weights(0.5, 64), kGauss), make_block_scheme(64, 0.5));
  CHECK(std::fabs(g.lhs - g.rhs) <= 1e-10 * std::fabs(g.rhs));
  const auto pair = block_covariance_identity(MAModel({1.0, 1.0}, kGauss), make_block_scheme(64, 0.5));
  CHECK(std::fabs(pair.lhs - pair.rhs) <= 1e-10 * std::fabs(pair.rhs));
}

TEST_CASE("Newman inequality") {
  const MCConfig mc{100000, 21};
  SECTION("independent blocks") {
    const auto s = make_block_scheme(256, 0.5);
    const std::vector<double> t(s.block_count, 0.3);
    const auto r = newman_check(MAModel({1.0}, kGauss), s, t, mc);
    CHECK(r.rhs == 0.0);
    CHECK(r.lhs.value <= 4.0 * r.lhs.std_error);
  }
  SECTION("zero frequencies") {
    const auto s = make_block_scheme(256, 0.5);
    const auto r = newman_check(kGeo, s, std::vector<double>(s.block_count, 0.0), mc);
    CHECK(r.lhs.value == 0.0);
    CHECK(r.rhs == 0.0);
  }
  SECTION("geometric model") {
    const auto s = make_block_scheme(256, 0.5);
    const auto r = newman_check(MAModel(geometric_weights(0.5, 64), kGauss), s,
                                std::vector<double>(s.block_count, 0.3), mc);
    CHECK(r.rhs > 0.0);
    CHECK(r.lhs.value <= r.rhs + 4.0 * r.lhs.std_error);
  }
  SECTION("dimension mismatch") {
    const auto s = make_block_scheme(256, 0.5);
    CHECK_THROWS_AS(newman_check(kGeo, s, std::vector<double>(3, 0.1), mc), std::invalid_argument);
  }
}

TEST_CASE("CF product deviation") {
  const MCConfig mc{200000, 31};
  const auto s = make_block_scheme(1024, 0.5);
  SECTION("zero frequency") {
    const auto r = cf_product_deviation(kGeo, s, 0.0, mc);
    CHECK(r.deviation.value == 0.0);
    CHECK(r.gaussian_target == 1.0);
  }
  SECTION("gaussian blocks") {
    const auto r = cf_product_deviation(kGeo, s, 1.0, mc);
    CHECK(r.deviation.value <= 4.0 * r.deviation.std_error);
  }
  SECTION("exponential innovations stay under the fitted envelope") {
    const MAModel m(geometric_weights(0.5, 16), InnovationLaw::centered_exponential(1.0));
    const double t = 0.5, q = 3.0;
    auto envelope_shape = [&](const BlockScheme& b) {
      const double sn = std::sqrt(partial_sum_variance(m, b.n));
      const double target = std::exp(-static_cast<double>(b.block_count) * t * t *
                                     partial_sum_variance(m, b.block_len) / (2.0 * sn * sn));
      return static_cast<double>(b.block_count) * std::pow(t, q) *
             std::pow(static_cast<double>(b.block_len), q / 2.0) / std::pow(sn, q) * target;
    };
    const MCConfig big{1000000, 32};
    const auto first = make_block_scheme(256, 0.5);
    const auto r0 = cf_product_deviation(m, first, t, big);
    const double C = r0.deviation.value / envelope_shape(first);
    for (std::uint64_t n : {1024ULL, 4096ULL}) {
      const auto b = make_block_scheme(n, 0.5);
      const auto r = cf_product_deviation(m, b, t, big);
      INFO("n = " << n);
      CHECK(r.deviation.value <= C * envelope_shape(b) + 4.0 * r.deviation.std_error);
    }
  }
}

TEST_CASE("Esseen smoothing bound") {
  SECTION("degenerate sample against a series oracle") {
    // int_0^1 (1 - e^{-t^2/2})/t dt = sum_k (-1)^{k+1} 2^{-k} / (k! 2k)
    double series = 0.0, fact = 1.0;
    for (int k = 1; k < 30; ++k) {
      fact *= k;
      series += (k % 2 ? 1.0 : -1.0) * std::pow(0.5, k) / (fact * 2.0 * k);
    }
    SmoothingParameters p;
    p.T = 1.0;
    const double bound = esseen_distance_bound(std::vector<double>(10, 0.0), p);
    CHECK(bound == Catch::Approx(2.0 * series / std::numbers::pi + p.tail_constant).epsilon(1e-9));
    CHECK(bound >= 0.5);
  }
  SECTION("normal samples: the bound dominates the KS distance") {
    const auto x = normals(1000000, 5);
    const double ks = ks_distance(x);
    double previous = std::numeric_limits<double>::infinity();
    for (double T : {2.0, 10.0}) {
      SmoothingParameters p;
      p.T = T;
      const double b = esseen_distance_bound(x, p);
      CHECK(b >= ks);
      CHECK(b < previous);
      previous = b;
    }
  }
  SECTION("helper frequency") {
    const auto p = SmoothingParameters::for_scheme(4096, 0.5);
    CHECK(p.T == Catch::Approx(std::pow(std::log(4096.0), -0.1) * 8.0));
  }
}
