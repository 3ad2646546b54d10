#include "assoclab/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "assoclab/block_scheme.hpp"
#include "assoclab/charfn.hpp"
#include "assoclab/covariance.hpp"
#include "assoclab/empirics.hpp"
#include "assoclab/errors.hpp"
#include "assoclab/rates.hpp"

namespace assoc {
namespace {

using nlohmann::json;

constexpr int kSchema = 1;
constexpr double kSlopeTolerance = 0.1;

const std::pair<ExperimentKind, const char*> kKindNames[] = {
    {ExperimentKind::RatesTable, "rates-table"}, {ExperimentKind::CltRate, "clt-rate"},
    {ExperimentKind::Coupling, "coupling"},      {ExperimentKind::Newman, "newman"},
    {ExperimentKind::Remainder, "remainder"},    {ExperimentKind::ModDev, "moddev"},
    {ExperimentKind::Frolov, "frolov"},
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Comma-separated rows; numbers in shortest round-trip form, no locale.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : width_(header.size()) { row_strings(header); }

  CsvWriter& cell(double v) { return push(format_double(v)); }
  CsvWriter& cell(std::uint64_t v) { return push(std::to_string(v)); }
  CsvWriter& cell(const std::string& v) { return push(v); }

  std::string str() const { return out_.str(); }

 private:
  CsvWriter& push(const std::string& s) {
    if (col_ > 0) out_ << ',';
    out_ << s;
    if (++col_ == width_) {
      out_ << '\n';
      col_ = 0;
    }
    return *this;
  }
  void row_strings(const std::vector<std::string>& cells) {
    for (const auto& c : cells) push(c);
  }

  std::size_t width_;
  std::size_t col_ = 0;
  std::ostringstream out_;
};

// JSON cannot hold inf or nan; they go in as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double read_number(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw ConfigError("expected a number, got \"" + s + "\"");
  }
  return j.get<double>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  const std::set<std::string> names(known.begin(), known.end());
  for (const auto& [key, _] : obj.items()) {
    if (!names.contains(key)) throw ConfigError("unknown key \"" + key + "\" in " + where);
  }
}

std::vector<std::uint64_t> powers_of_two(int lo, int hi, int step = 1) {
  std::vector<std::uint64_t> out;
  for (int e = lo; e <= hi; e += step) out.push_back(std::uint64_t{1} << e);
  return out;
}

void fill_defaults(ExperimentConfig& c) {
  if (c.csv_name.empty()) c.csv_name = experiment_name(c.kind) + ".csv";
  if (c.kind == ExperimentKind::RatesTable) {
    if (c.q_grid.empty()) {
      for (int i = 21; i <= 50; ++i) c.q_grid.push_back(i / 10.0);
    }
    if (c.theta_grid.empty()) c.theta_grid = {0.5, 1.0, 2.0, 4.0};
    return;
  }
  if (!c.n_grid.empty()) return;
  switch (c.kind) {
    case ExperimentKind::CltRate:
    case ExperimentKind::Remainder:
    case ExperimentKind::Frolov: c.n_grid = powers_of_two(8, 14); break;
    case ExperimentKind::ModDev: c.n_grid = {100000}; break;
    default: c.n_grid = powers_of_two(8, 12, 2); break;
  }
}

double resolved_theta(const ExperimentConfig& c, const MAModel& model) {
  return c.theta ? *c.theta : CovarianceProfile(model).theta();
}

json check(const std::string& name, bool passed, const std::string& detail) {
  return {{"name", name}, {"passed", passed}, {"detail", detail}};
}

MCConfig mc_of(const ExperimentConfig& c) { return {c.replicates, c.master_seed, 64}; }

RunArtifacts run_rates_table(const ExperimentConfig& c) {
  CsvWriter csv({"q", "theta", "exponent", "regime", "alpha_star", "optimizer_exponent",
                 "optimizer_alpha"});
  double worst = 0.0;
  for (double q : c.q_grid) {
    for (double theta : c.theta_grid) {
      const RateBound b = clt_rate_exponent(q, theta);
      const OptimalAlpha opt = optimal_alpha(q, theta);
      worst = std::max(worst, std::fabs(opt.exponent - b.exponent));
      csv.cell(q).cell(theta).cell(b.exponent).cell(std::string(regime_name(b.regime)));
      csv.cell(b.alpha_star).cell(opt.exponent).cell(opt.alpha_star);
    }
  }
  RunArtifacts a;
  a.csv = csv.str();
  a.summary["results"] = {{"rows", c.q_grid.size() * c.theta_grid.size()},
                          {"max_optimizer_gap", worst}};
  a.summary["checks"].push_back(check("optimizer_matches_closed_form", worst <= 1e-12,
                                      "max |optimizer - closed form| = " + format_double(worst)));
  return a;
}

RunArtifacts run_clt_rate(const ExperimentConfig& c, const MAModel& model) {
  const auto r = clt_rate_experiment(model, c.n_grid, mc_of(c), c.q, c.theta);
  const double floor = ks_noise_floor(c.replicates);
  CsvWriter csv({"n", "statistic", "stderr", "theory", "noise_floor"});
  for (std::size_t i = 0; i < r.n_grid.size(); ++i) {
    const double theory = std::pow(static_cast<double>(r.n_grid[i]), -r.theoretical_exponent);
    csv.cell(r.n_grid[i]).cell(r.distances[i]).cell(std::numeric_limits<double>::quiet_NaN());
    csv.cell(theory).cell(floor);
  }
  RunArtifacts a;
  a.csv = csv.str();
  a.summary["results"] = {{"fitted_slope", r.fit.slope},
                          {"fitted_intercept", r.fit.intercept},
                          {"slope_stderr", r.fit.slope_stderr},
                          {"theta", number(r.theta)},
                          {"theoretical_exponent", r.theoretical_exponent},
                          {"noise_floor", floor}};
  a.summary["checks"].push_back(check("bound_non_violation",
                                      r.fit.slope <= -r.theoretical_exponent + kSlopeTolerance,
                                      "slope " + format_double(r.fit.slope) + " vs -" +
                                          format_double(r.theoretical_exponent) + " + 0.1"));
  if (r.exact_normal) {
    a.summary["flags"].push_back("exact-normal");
    bool at_floor = true;
    for (double d : r.distances) at_floor = at_floor && d <= floor;
    a.summary["checks"].push_back(check("at_noise_floor", at_floor, "every distance <= 1.63/sqrt(R)"));
  }
  return a;
}

RunArtifacts run_coupling(const ExperimentConfig& c, const MAModel& model) {
  const double theta = resolved_theta(c, model);
  const double floor = two_sample_noise_floor(c.replicates, c.replicates);
  double exponent = 0.0;
  for (const auto& p : component_exponents(c.alpha, c.q, theta)) {
    if (p.name == "coupling") exponent = p.valid ? p.exponent : 0.0;
  }
  CsvWriter csv({"n", "statistic", "stderr", "theory", "noise_floor", "block_len", "block_count"});
  std::vector<double> d;
  for (std::uint64_t n : c.n_grid) {
    const BlockScheme s = make_block_scheme(n, c.alpha);
    d.push_back(coupling_distance(model, s, mc_of(c)));
    csv.cell(n).cell(d.back()).cell(std::numeric_limits<double>::quiet_NaN());
    csv.cell(std::pow(static_cast<double>(n), -exponent)).cell(floor).cell(s.block_len).cell(s.block_count);
  }
  bool trend = true;
  for (std::size_t i = 1; i < d.size(); ++i) trend = trend && d[i] <= d[i - 1] + floor;
  RunArtifacts a;
  a.csv = csv.str();
  a.summary["results"] = {{"noise_floor", floor}, {"bound_exponent", exponent}, {"theta", number(theta)}};
  a.summary["checks"].push_back(check("nonincreasing_within_floor", trend, "d[i] <= d[i-1] + floor"));
  if (model.is_iid()) {
    a.summary["flags"].push_back("independent-blocks");
  }
  return a;
}

RunArtifacts run_newman(const ExperimentConfig& c, const MAModel& model) {
  CsvWriter csv({"n", "statistic", "stderr", "theory", "block_count"});
  bool holds = true;
  for (std::uint64_t n : c.n_grid) {
    const BlockScheme s = make_block_scheme(n, c.alpha);
    const std::vector<double> t(s.block_count, c.t / std::sqrt(partial_sum_variance(model, n)));
    const NewmanResult r = newman_check(model, s, t, mc_of(c));
    holds = holds && r.lhs.value <= r.rhs + 4.0 * r.lhs.std_error;
    csv.cell(n).cell(r.lhs.value).cell(r.lhs.std_error).cell(r.rhs).cell(s.block_count);
  }
  RunArtifacts a;
  a.csv = csv.str();
  a.summary["results"] = json::object();
  a.summary["checks"].push_back(check("newman_inequality", holds, "lhs <= rhs + 4 stderr at every n"));
  return a;
}

RunArtifacts run_remainder(const ExperimentConfig& c, const MAModel& model) {
  CsvWriter csv({"n", "statistic", "stderr", "theory", "remainder_len", "threshold"});
  for (std::uint64_t n : c.n_grid) {
    const BlockScheme s = make_block_scheme(n, c.alpha);
    const MonteCarloEstimate e = remainder_tail(model, s, mc_of(c));
    csv.cell(n).cell(e.value).cell(e.std_error);
    csv.cell(std::pow(static_cast<double>(n), -c.q * c.alpha / 8.0)).cell(s.remainder_len);
    csv.cell(remainder_threshold(model, s));
  }
  RunArtifacts a;
  a.csv = csv.str();
  a.summary["results"] = {{"bound_exponent", c.q * c.alpha / 8.0}};
  return a;
}

RunArtifacts run_moddev(const ExperimentConfig& c, const MAModel& model) {
  CsvWriter csv({"n", "statistic", "stderr", "theory", "x_n", "gaussian_tail", "exceedance"});
  bool near_one = true;
  bool in_regime = true;
  for (std::uint64_t n : c.n_grid) {
    const ModDevResult r = moddev_ratio(model, n, c.lambda, mc_of(c));
    near_one = near_one && std::fabs(r.ratio.value - 1.0) <= 4.0 * r.ratio.std_error;
    in_regime = in_regime && r.in_regime;
    csv.cell(n).cell(r.ratio.value).cell(r.ratio.std_error).cell(1.0);
    csv.cell(r.x_n).cell(r.gaussian_tail).cell(r.exceedance.value);
  }
  RunArtifacts a;
  a.csv = csv.str();
  a.summary["results"] = {{"lambda", c.lambda}, {"theta", number(resolved_theta(c, model))}};
  a.summary["checks"].push_back(check("ratio_within_4_stderr", near_one, "|ratio - 1| <= 4 stderr"));
  if (!in_regime) a.summary["flags"].push_back("out-of-regime");
  if (model.innovation().is_gaussian()) a.summary["flags"].push_back("exact-normal");
  return a;
}

RunArtifacts run_frolov(const ExperimentConfig& c, const MAModel& model) {
  const FrolovSweep sweep = frolov_sweep(model, c.n_grid, c.alpha, c.q, c.lambda, mc_of(c));
  std::vector<std::string> header = {"n", "statistic", "stderr", "theory", "B_n", "M_n", "M_n_stderr",
                                     "x_n", "e6"};
  for (double delta : default_frolov_deltas()) {
    header.push_back("lambda_delta_" + format_double(delta));
    header.push_back("lambda_delta_" + format_double(delta) + "_stderr");
  }
  CsvWriter csv(header);
  for (const auto& p : sweep.points) {
    const double scale = std::pow(p.B_n, c.q / 2.0);
    csv.cell(p.n).cell(p.L_n).cell(p.M_n.std_error / scale);
    csv.cell(std::pow(static_cast<double>(p.n), c.alpha * (2.0 - c.q) / 2.0));
    csv.cell(p.B_n).cell(p.M_n.value).cell(p.M_n.std_error).cell(p.x_n).cell(p.e6);
    for (const auto& l : p.lambda_fn) csv.cell(l.value.value).cell(l.value.std_error);
  }
  const double target = c.alpha * (2.0 - c.q) / 2.0;
  RunArtifacts a;
  a.csv = csv.str();
  a.summary["results"] = {{"log_L_slope", sweep.log_L_fit.slope},
                          {"log_L_slope_target", target},
                          {"block_threshold", frolov_block_threshold(c.alpha, c.q)}};
  a.summary["checks"].push_back(check("log_L_slope", std::fabs(sweep.log_L_fit.slope - target) <= kSlopeTolerance,
                                      "slope " + format_double(sweep.log_L_fit.slope) + " vs " +
                                          format_double(target) + " +- 0.1"));
  if (c.lambda >= frolov_block_threshold(c.alpha, c.q)) a.summary["flags"].push_back("beyond-block-threshold");
  return a;
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExperimentKind parse_experiment(const std::string& name) {
  for (const auto& [k, n] : kKindNames) {
    if (name == n) return k;
  }
  throw ConfigError("unknown experiment \"" + name + "\"");
}

MAModel ModelSpec::build() const {
  InnovationLaw law = InnovationLaw::standard_gaussian();
  if (innovation.kind == "exponential") {
    law = InnovationLaw::centered_exponential(innovation.rate);
  } else if (innovation.kind == "pareto") {
    law = InnovationLaw::centered_pareto(innovation.tail_index);
  } else if (innovation.kind != "gaussian") {
    throw ConfigError("unknown innovation kind \"" + innovation.kind + "\"");
  }

  if (family == "iid") return MAModel({1.0}, law);
  if (family == "geometric") return MAModel(geometric_weights(rho, K), law);
  if (family == "power") return MAModel(power_weights(beta, K), law);
  if (family == "explicit") return MAModel(weights, law);
  throw ConfigError("unknown model family \"" + family + "\"");
}

json ExperimentConfig::to_json() const {
  json m = {{"family", model.family},
            {"rho", model.rho},
            {"beta", model.beta},
            {"K", model.K},
            {"weights", model.weights},
            {"innovation",
             {{"kind", model.innovation.kind},
              {"rate", model.innovation.rate},
              {"tail_index", model.innovation.tail_index}}}};
  return {{"schema", kSchema},
          {"experiment", experiment_name(kind)},
          {"model", m},
          {"n_grid", n_grid},
          {"alpha", alpha},
          {"q", q},
          {"theta", theta ? number(*theta) : json(nullptr)},
          {"lambda", lambda},
          {"t", t},
          {"q_grid", q_grid},
          {"theta_grid", theta_grid},
          {"replicates", replicates},
          {"master_seed", master_seed},
          {"outputs", {{"csv", csv_name}, {"summary", summary_name}}}};
}

ExperimentConfig ExperimentConfig::from_json(const json& input) {
  const json& j = input.contains("config") ? input.at("config") : input;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"schema", "experiment", "model", "n_grid", "alpha", "q", "theta", "lambda", "t",
                  "q_grid", "theta_grid", "replicates", "master_seed", "outputs"},
                 "config");
  try {
    if (j.value("schema", kSchema) != kSchema) throw ConfigError("unsupported config schema");
    ExperimentConfig c;
    if (!j.contains("experiment")) throw ConfigError("config needs an \"experiment\" key");
    c.kind = parse_experiment(j.at("experiment").get<std::string>());

    if (j.contains("model")) {
      const json& m = j.at("model");
      reject_unknown(m, {"family", "rho", "beta", "K", "weights", "innovation"}, "model");
      c.model.family = m.value("family", c.model.family);
      c.model.rho = m.value("rho", c.model.rho);
      c.model.beta = m.value("beta", c.model.beta);
      c.model.K = m.value("K", c.model.K);
      c.model.weights = m.value("weights", c.model.weights);
      if (m.contains("innovation")) {
        const json& z = m.at("innovation");
        reject_unknown(z, {"kind", "rate", "tail_index"}, "model.innovation");
        c.model.innovation.kind = z.value("kind", c.model.innovation.kind);
        c.model.innovation.rate = z.value("rate", c.model.innovation.rate);
        c.model.innovation.tail_index = z.value("tail_index", c.model.innovation.tail_index);
      }
    }
    c.n_grid = j.value("n_grid", c.n_grid);
    c.alpha = j.value("alpha", c.alpha);
    c.q = j.value("q", c.q);
    if (j.contains("theta") && !j.at("theta").is_null()) c.theta = read_number(j.at("theta"));
    c.lambda = j.value("lambda", c.lambda);
    c.t = j.value("t", c.t);
    c.q_grid = j.value("q_grid", c.q_grid);
    c.theta_grid = j.value("theta_grid", c.theta_grid);
    c.replicates = j.value("replicates", c.replicates);
    c.master_seed = j.value("master_seed", c.master_seed);
    if (j.contains("outputs")) {
      const json& o = j.at("outputs");
      reject_unknown(o, {"csv", "summary"}, "outputs");
      c.csv_name = o.value("csv", c.csv_name);
      c.summary_name = o.value("summary", c.summary_name);
    }
    fill_defaults(c);
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
}

std::vector<std::string> validate(const ExperimentConfig& input) {
  ExperimentConfig c = input;
  fill_defaults(c);
  std::vector<std::string> errors;
  auto fail = [&](const std::string& tag, const std::string& msg) {
    errors.push_back("[" + tag + "] " + msg);
  };

  if (c.kind == ExperimentKind::RatesTable) {
    for (double q : c.q_grid) {
      if (!(q > 2.0)) fail("A1", "q_grid entry " + format_double(q) + " must exceed 2");
    }
    for (double th : c.theta_grid) {
      if (!(th > 0.0)) fail("A2", "theta_grid entry " + format_double(th) + " must be positive");
    }
    return errors;
  }

  std::optional<MAModel> model;
  const auto& m = c.model;
  if (m.family == "geometric" && !(m.rho > 0.0 && m.rho < 1.0)) {
    fail("A3", "geometric rho must lie in (0, 1) for summable covariances");
  } else if (m.family == "power" && !(m.beta > 1.0)) {
    fail("A3", "power-law beta must exceed 1 for summable covariances");
  } else if (m.innovation.kind == "pareto" && !(m.innovation.tail_index > 2.0)) {
    fail("A1", "Pareto tail_index must exceed 2 for finite variance");
  } else if (m.innovation.kind == "exponential" && !(m.innovation.rate > 0.0)) {
    fail("model", "exponential rate must be positive");
  } else {
    try {
      model.emplace(m.build());
    } catch (const std::exception& e) {
      fail("model", e.what());
    }
  }

  if (c.replicates < 2) fail("config", "replicates must be at least 2");
  if (!(c.q > 2.0)) fail("A1", "q must exceed 2");
  if (model && c.q > 2.0 && !(c.q < model->innovation().q_max())) {
    fail("A1", "E|X|^q is infinite: q = " + format_double(c.q) + " but the innovation has moments only below " +
                   format_double(model->innovation().q_max()));
  }
  if (c.theta && !(*c.theta > 0.0)) fail("A2", "theta must be positive");
  if (!(c.lambda >= 0.0)) fail("config", "lambda must be nonnegative");
  if (!std::isfinite(c.t)) fail("config", "t must be finite");

  if (c.n_grid.empty()) fail("config", "n_grid is empty");
  for (std::size_t i = 1; i < c.n_grid.size(); ++i) {
    if (c.n_grid[i] <= c.n_grid[i - 1]) {
      fail("config", "n_grid must be strictly increasing");
      break;
    }
  }

  switch (c.kind) {
    case ExperimentKind::CltRate:
      if (c.n_grid.size() < 2) fail("config", "clt-rate needs at least two n values");
      for (auto n : c.n_grid) {
        if (n < 16) fail("config", "clt-rate needs every n >= 16");
      }
      break;
    case ExperimentKind::Coupling:
    case ExperimentKind::Newman:
    case ExperimentKind::Remainder:
    case ExperimentKind::Frolov:
      for (auto n : c.n_grid) {
        try {
          (void)make_block_scheme(n, c.alpha);
        } catch (const std::exception& e) {
          fail("scheme", "n = " + std::to_string(n) + ": " + e.what());
        }
      }
      break;
    case ExperimentKind::ModDev: {
      if (!model) break;
      const double theta = c.theta ? *c.theta : CovarianceProfile(*model).theta();
      if (!(theta > 0.0) || !(c.q > 2.0) || !(c.lambda >= 0.0)) break;
      const ModDevWindows w = moddev_windows(c.q, theta, c.lambda);
      if (!w.feasible) {
        fail("E8", "theta > 1 + lambda fails: theta = " + format_double(theta) +
                       ", lambda = " + format_double(c.lambda));
      } else if (!w.alpha_window.contains(c.alpha)) {
        fail("E10", "alpha = " + format_double(c.alpha) + " outside (1/2, (2 theta - lambda)/(2 theta + 2)) = (0.5, " +
                        format_double(w.alpha_window.hi) + ")");
      }
      if (epsilon_window(c.q, c.lambda, c.alpha).empty()) {
        fail("E11", "epsilon window (0, (q alpha - lambda)/(2q)) is empty");
      }
      for (auto n : c.n_grid) {
        if (n < 2) fail("config", "moddev needs n >= 2");
      }
      break;
    }
    case ExperimentKind::RatesTable: break;
  }
  return errors;
}

RunArtifacts run(const ExperimentConfig& input) {
  ExperimentConfig c = input;
  fill_defaults(c);
  const auto errors = validate(c);
  if (!errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }

  RunArtifacts a;
  if (c.kind == ExperimentKind::RatesTable) {
    a = run_rates_table(c);
  } else {
    const MAModel model = c.model.build();
    switch (c.kind) {
      case ExperimentKind::CltRate: a = run_clt_rate(c, model); break;
      case ExperimentKind::Coupling: a = run_coupling(c, model); break;
      case ExperimentKind::Newman: a = run_newman(c, model); break;
      case ExperimentKind::Remainder: a = run_remainder(c, model); break;
      case ExperimentKind::ModDev: a = run_moddev(c, model); break;
      case ExperimentKind::Frolov: a = run_frolov(c, model); break;
      case ExperimentKind::RatesTable: break;
    }
    a.summary["model"] = model.describe();
  }

  json& s = a.summary;
  s["schema"] = kSchema;
  s["experiment"] = experiment_name(c.kind);
  s["config"] = c.to_json();
  s["master_seed"] = c.master_seed;
  if (!s.contains("checks")) s["checks"] = json::array();
  if (!s.contains("flags")) s["flags"] = json::array();
  return a;
}

void write_artifacts(const ExperimentConfig& config, const RunArtifacts& artifacts,
                     const std::filesystem::path& out_dir) {
  ExperimentConfig c = config;
  fill_defaults(c);
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream csv(out_dir / c.csv_name, std::ios::binary);
    csv << artifacts.csv;
    if (!csv) throw std::runtime_error("cannot write " + (out_dir / c.csv_name).string());
  }
  std::ofstream summary(out_dir / c.summary_name, std::ios::binary);
  summary << artifacts.summary.dump(2) << '\n';
  if (!summary) throw std::runtime_error("cannot write " + (out_dir / c.summary_name).string());
}

}  // namespace assoc
