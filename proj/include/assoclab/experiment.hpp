#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "assoclab/model.hpp"

namespace assoc {

enum class ExperimentKind { RatesTable, CltRate, Coupling, Newman, Remainder, ModDev, Frolov };

std::string experiment_name(ExperimentKind kind);
// Throws ConfigError for an unknown name.
ExperimentKind parse_experiment(const std::string& name);

struct InnovationSpec {
  std::string kind = "gaussian";  // gaussian | exponential | pareto
  double rate = 1.0;
  double tail_index = 4.0;
};

struct ModelSpec {
  std::string family = "iid";  // iid | geometric | power | explicit
  double rho = 0.5;
  double beta = 2.0;
  std::size_t K = 64;
  std::vector<double> weights;  // explicit family only
  InnovationSpec innovation;

  MAModel build() const;
};

/// One experiment, fully resolved. Every field has a value after parsing, and
/// to_json() writes all of them, so a summary's "config" block replays the run.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::CltRate;
  ModelSpec model;
  std::vector<std::uint64_t> n_grid;
  double alpha = 0.5;
  double q = 3.0;
  std::optional<double> theta;  // overrides the model's fitted decay exponent
  double lambda = 0.5;
  double t = 1.0;               // newman: every block frequency is t / s_n
  std::vector<double> q_grid;   // rates-table
  std::vector<double> theta_grid;
  std::uint64_t replicates = 100000;
  std::uint64_t master_seed = 1;
  std::string csv_name;         // default "<experiment>.csv"
  std::string summary_name = "summary.json";

  nlohmann::json to_json() const;
  // Accepts either a config object or a summary (reads its "config" block).
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::filesystem::path& path);
};

// Every violated constraint, each tagged with the assumption it encodes
// (A1 moments, A2/A3 covariance decay, E8/E10/E11 moderate-deviation windows).
// Empty when the config is runnable.
std::vector<std::string> validate(const ExperimentConfig& config);

struct RunArtifacts {
  std::string csv;
  nlohmann::json summary;
};

// Runs a validated config. Throws ConfigError listing all violations otherwise.
RunArtifacts run(const ExperimentConfig& config);

// Writes the CSV and summary under `out_dir` (created if needed).
void write_artifacts(const ExperimentConfig& config, const RunArtifacts& artifacts,
                     const std::filesystem::path& out_dir);

}  // namespace assoc
