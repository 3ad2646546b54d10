#include <catch_amalgamated.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "assoclab/errors.hpp"
#include "assoclab/experiment.hpp"
#include "assoclab/rates.hpp"

using namespace assoc;
using nlohmann::json;

namespace {

bool mentions(const std::vector<std::string>& errors, const std::string& tag) {
  return std::any_of(errors.begin(), errors.end(), [&](const auto& e) { return e.find(tag) != std::string::npos; });
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("rates table") {
  const auto c = ExperimentConfig::from_json({{"experiment", "rates-table"}});
  CHECK(c.q_grid.size() == 30);
  CHECK(c.theta_grid == std::vector<double>{0.5, 1.0, 2.0, 4.0});
  const auto a = run(c);
  const auto rows = lines(a.csv);
  REQUIRE(rows.size() == 1 + 30 * 4);
  CHECK(rows[0] == "q,theta,exponent,regime,alpha_star,optimizer_exponent,optimizer_alpha");
  // q = 3, theta = 1 row
  const auto it = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return r.rfind("3,1,", 0) == 0; });
  REQUIRE(it != rows.end());
  CHECK(it->find("high-q") != std::string::npos);
  CHECK(std::stod(it->substr(4)) == Catch::Approx(3.0 / 19.0));
  CHECK(a.summary["checks"][0]["passed"] == true);
}

TEST_CASE("clt-rate on the iid gaussian model is flagged exact-normal") {
  const auto c = ExperimentConfig::from_json(
      {{"experiment", "clt-rate"}, {"n_grid", {16, 64, 256}}, {"replicates", 20000}, {"master_seed", 5}});
  const auto a = run(c);
  const auto flags = a.summary["flags"].get<std::vector<std::string>>();
  CHECK(std::find(flags.begin(), flags.end(), "exact-normal") != flags.end());
  CHECK(std::fabs(a.summary["results"]["fitted_slope"].get<double>()) <= 0.05);
  CHECK(lines(a.csv).front() == "n,statistic,stderr,theory,noise_floor");
}

TEST_CASE("validation cites the violated assumption") {
  SECTION("E8 for theta = 1, lambda = 0.5") {
    const auto c = ExperimentConfig::from_json({{"experiment", "moddev"},
                                                {"model", {{"family", "geometric"}, {"rho", 0.5}, {"K", 64}}},
                                                {"lambda", 0.5},
                                                {"alpha", 0.6}});
    const auto errors = validate(c);
    CHECK(mentions(errors, "[E8]"));
    CHECK_THROWS_AS(run(c), ConfigError);
  }
  SECTION("E10 and E11 with an override theta") {
    const auto c = ExperimentConfig::from_json(
        {{"experiment", "moddev"}, {"theta", 4.0}, {"lambda", 2.5}, {"alpha", 0.55}, {"q", 3.0}});
    const auto errors = validate(c);
    CHECK(mentions(errors, "[E10]"));
    CHECK(mentions(errors, "[E11]"));
  }
  SECTION("every violation is listed") {
    const auto c = ExperimentConfig::from_json({{"experiment", "clt-rate"},
                                                {"model", {{"innovation", {{"kind", "pareto"}, {"tail_index", 2.5}}}}},
                                                {"q", 3.0},
                                                {"theta", -1.0},
                                                {"n_grid", {8, 4}}});
    const auto errors = validate(c);
    CHECK(mentions(errors, "[A1]"));
    CHECK(mentions(errors, "[A2]"));
    CHECK(mentions(errors, "n_grid"));
    CHECK(errors.size() >= 3);
  }
  SECTION("A3 for a non-summable model") {
    const auto c = ExperimentConfig::from_json(
        {{"experiment", "coupling"}, {"model", {{"family", "geometric"}, {"rho", 1.0}}}});
    CHECK(mentions(validate(c), "[A3]"));
  }
  SECTION("valid config") {
    CHECK(validate(ExperimentConfig::from_json({{"experiment", "coupling"}})).empty());
  }
}

TEST_CASE("config parsing") {
  CHECK_THROWS_AS(ExperimentConfig::from_json({{"experiment", "clt-rate"}, {"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json({{"experiment", "nope"}}), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json({{"replicates", 5}}), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json({{"experiment", "clt-rate"}, {"schema", 2}}), ConfigError);

  const auto c = ExperimentConfig::from_json({{"experiment", "frolov"},
                                              {"model", {{"family", "power"}, {"beta", 1.7}, {"K", 10}}},
                                              {"theta", "inf"},
                                              {"alpha", 0.9}});
  const auto again = ExperimentConfig::from_json(c.to_json());
  CHECK(again.to_json() == c.to_json());
  CHECK(std::isinf(*again.theta));
  CHECK(c.n_grid.size() == 7);
  CHECK(c.csv_name == "frolov.csv");
}

TEST_CASE("a summary replays its run") {
  const auto c = ExperimentConfig::from_json({{"experiment", "newman"},
                                              {"model", {{"family", "geometric"}, {"K", 32}}},
                                              {"n_grid", {64, 256}},
                                              {"replicates", 2000},
                                              {"master_seed", 99}});
  const auto first = run(c);
  const auto dir = std::filesystem::temp_directory_path() / "assoclab_test_experiment";
  std::filesystem::remove_all(dir);
  write_artifacts(c, first, dir);
  const auto replay = ExperimentConfig::load(dir / "summary.json");
  const auto second = run(replay);
  CHECK(second.csv == first.csv);
  std::ifstream in(dir / "newman.csv");
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == first.csv);
  std::filesystem::remove_all(dir);
}
