// Command-line front end: one subcommand per experiment kind plus `validate`.

#include <omp.h>

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "assoclab/errors.hpp"
#include "assoclab/experiment.hpp"

namespace {

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> replicates;
  int threads = 0;
};

void print_error(const std::string& kind, const std::vector<std::string>& messages) {
  nlohmann::json j = {{"error", kind}, {"messages", messages}};
  std::cerr << j.dump(2) << '\n';
}

assoc::ExperimentConfig resolve(const Options& o, std::optional<assoc::ExperimentKind> kind) {
  assoc::ExperimentConfig c;
  if (!o.config_path.empty()) {
    c = assoc::ExperimentConfig::load(o.config_path);
    if (kind && c.kind != *kind) {
      throw assoc::ConfigError("config describes a " + assoc::experiment_name(c.kind) +
                               " experiment, not " + assoc::experiment_name(*kind));
    }
  } else {
    if (!kind) throw assoc::ConfigError("validate needs --config");
    c = assoc::ExperimentConfig::from_json({{"experiment", assoc::experiment_name(*kind)}});
  }
  if (o.seed) c.master_seed = *o.seed;
  if (o.replicates) c.replicates = *o.replicates;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo and closed-form checks of normal approximation rates for associated sequences"};
  app.require_subcommand(1);

  Options opts;
  const std::pair<const char*, assoc::ExperimentKind> commands[] = {
      {"rates", assoc::ExperimentKind::RatesTable}, {"clt-rate", assoc::ExperimentKind::CltRate},
      {"coupling", assoc::ExperimentKind::Coupling}, {"newman", assoc::ExperimentKind::Newman},
      {"remainder", assoc::ExperimentKind::Remainder}, {"moddev", assoc::ExperimentKind::ModDev},
      {"frolov", assoc::ExperimentKind::Frolov},
  };

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "JSON config or a previous summary.json");
    sub->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", opts.seed, "override master_seed");
    sub->add_option("--replicates", opts.replicates, "override replicates")->check(CLI::PositiveNumber);
    sub->add_option("--threads", opts.threads, "OpenMP threads (results do not depend on it)")
        ->check(CLI::NonNegativeNumber);
  };

  std::vector<std::pair<CLI::App*, assoc::ExperimentKind>> subs;
  for (const auto& [name, kind] : commands) {
    CLI::App* sub = app.add_subcommand(name, "run the " + assoc::experiment_name(kind) + " experiment");
    add_common(sub);
    subs.emplace_back(sub, kind);
  }
  CLI::App* validate_cmd = app.add_subcommand("validate", "check a config and list every violation");
  add_common(validate_cmd);

  CLI11_PARSE(app, argc, argv);
  if (opts.threads > 0) omp_set_num_threads(opts.threads);

  try {
    if (validate_cmd->parsed()) {
      const auto config = resolve(opts, std::nullopt);
      const auto errors = assoc::validate(config);
      if (!errors.empty()) {
        print_error("validation", errors);
        return 2;
      }
      std::cout << config.to_json().dump(2) << '\n';
      return 0;
    }
    for (const auto& [sub, kind] : subs) {
      if (!sub->parsed()) continue;
      const auto config = resolve(opts, kind);
      const auto errors = assoc::validate(config);
      if (!errors.empty()) {
        print_error("validation", errors);
        return 2;
      }
      const auto artifacts = assoc::run(config);
      assoc::write_artifacts(config, artifacts, opts.out_dir);
      std::cout << artifacts.summary.dump(2) << '\n';
      return 0;
    }
  } catch (const assoc::ConfigError& e) {
    print_error("config", {e.what()});
    return 2;
  } catch (const std::exception& e) {
    print_error("runtime", {e.what()});
    return 1;
  }
  return 0;
}
