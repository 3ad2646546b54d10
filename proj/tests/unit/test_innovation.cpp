#include <catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "assoclab/errors.hpp"
#include "assoclab/innovation.hpp"
#include "assoclab/monte_carlo.hpp"

using namespace assoc;

namespace {

struct Moments {
  double mean, var, mean_se, var_se;
};

Moments moments(const InnovationLaw& law, std::uint64_t count, std::uint64_t R) {
  const auto x = mc_collect([&](std::uint64_t, Engine& rng) { return law.draw_sum(rng, count); },
                            MCConfig{R, 2024});
  double m = 0.0;
  for (double v : x) m += v;
  m /= static_cast<double>(R);
  double v2 = 0.0, v4 = 0.0;
  for (double v : x) {
    const double d = (v - m) * (v - m);
    v2 += d;
    v4 += d * d;
  }
  v2 /= static_cast<double>(R - 1);
  v4 /= static_cast<double>(R);
  return {m, v2, std::sqrt(v2 / static_cast<double>(R)), std::sqrt((v4 - v2 * v2) / static_cast<double>(R))};
}

}  // namespace

TEST_CASE("closed-form variances and moment orders") {
  CHECK(InnovationLaw::standard_gaussian().variance() == 1.0);
  CHECK(InnovationLaw::centered_exponential(2.0).variance() == 0.25);
  // beta = 4: beta / ((beta-1)^2 (beta-2)) = 4 / 18
  CHECK(InnovationLaw::centered_pareto(4.0).variance() == Catch::Approx(4.0 / 18.0));
  CHECK(std::isinf(InnovationLaw::standard_gaussian().q_max()));
  CHECK(InnovationLaw::centered_pareto(3.5).q_max() == 3.5);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(InnovationLaw::centered_exponential(0.0), DomainError);
  CHECK_THROWS_AS(InnovationLaw::centered_pareto(2.0), DomainError);
  const auto p = InnovationLaw::centered_pareto(3.0);
  CHECK_NOTHROW(p.require_moment(2.9));
  CHECK_THROWS_AS(p.require_moment(3.0), MomentError);
}

TEST_CASE("draws are centered with the stated variance") {
  for (const auto& law : {InnovationLaw::standard_gaussian(), InnovationLaw::centered_exponential(1.5),
                          InnovationLaw::centered_pareto(6.0)}) {
    for (std::uint64_t count : {1ULL, 7ULL, 300ULL}) {
      const Moments m = moments(law, count, 200000);
      INFO(law.name() << " count " << count);
      const double var = law.variance() * static_cast<double>(count);
      CHECK(std::fabs(m.mean) <= 4.0 * m.mean_se);
      CHECK(std::fabs(m.var - var) <= 4.0 * m.var_se);
    }
  }
}

TEST_CASE("draw_sum of the exponential has the gamma skewness") {
  // Third central moment of a sum of c iid terms is c times the single-term value.
  const auto law = InnovationLaw::centered_exponential(1.0);
  const std::uint64_t c = 50, R = 400000;
  const auto x = mc_collect([&](std::uint64_t, Engine& rng) { return law.draw_sum(rng, c); }, MCConfig{R, 8});
  double m3 = 0.0, m6 = 0.0;
  for (double v : x) {
    m3 += v * v * v;
    m6 += v * v * v * v * v * v;
  }
  m3 /= static_cast<double>(R);
  m6 /= static_cast<double>(R);
  const double se = std::sqrt((m6 - m3 * m3) / static_cast<double>(R));
  CHECK(std::fabs(m3 - static_cast<double>(c) * law.third_central_moment()) <= 4.0 * se);
}

TEST_CASE("fill and weighted_sum consume the engine identically") {
  const auto law = InnovationLaw::centered_exponential(1.0);
  const std::vector<double> w = {0.5, 1.0, 2.0, 0.25};
  Engine a{3}, b{3};
  std::vector<double> z(w.size());
  law.fill(a, z);
  double expect = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) expect += w[i] * z[i];
  CHECK(law.weighted_sum(b, w) == expect);
  CHECK(a() == b());
}
