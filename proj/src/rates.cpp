#include "assoclab/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "assoclab/errors.hpp"

namespace assoc {
namespace {

constexpr double kEightThirds = 8.0 / 3.0;

void require_q_theta(double q, double theta) {
  if (!(q > 2.0) || std::isnan(q)) throw DomainError("moment order q must exceed 2");
  if (!(theta > 0.0)) throw DomainError("covariance decay exponent theta must be positive");
}

// A linear function c0 + c1 * alpha.
struct Line {
  double c0;
  double c1;
};

double intersect(const Line& a, const Line& b) {
  if (a.c1 == b.c1) return std::numeric_limits<double>::quiet_NaN();
  return (b.c0 - a.c0) / (a.c1 - b.c1);
}

}  // namespace

std::string_view regime_name(Regime r) noexcept {
  switch (r) {
    case Regime::LowQ: return "low-q";
    case Regime::MidQ: return "mid-q";
    case Regime::HighQ: return "high-q";
  }
  return "unknown";
}

RateBound clt_rate_exponent(double q, double theta) {
  require_q_theta(q, theta);
  RateBound b;
  const bool limit = std::isinf(theta);
  if (q <= kEightThirds) {
    b.regime = Regime::LowQ;
    b.exponent = limit ? (q - 2.0) / 2.0 : theta * (q - 2.0) / (q + 2.0 * theta);
    b.alpha_star = limit ? 1.0 : 2.0 * theta / (q + 2.0 * theta);
  } else if (q < 3.0) {
    b.regime = Regime::MidQ;
    b.exponent = limit ? q / 8.0 : q * theta / (q + 8.0 + 8.0 * theta);
    b.alpha_star = limit ? 1.0 : 8.0 * theta / (q + 8.0 + 8.0 * theta);
  } else {
    b.regime = Regime::HighQ;
    b.exponent = limit ? 3.0 / 8.0 : 3.0 * theta / (11.0 + 8.0 * theta);
    b.alpha_star = limit ? 1.0 : 8.0 * theta / (11.0 + 8.0 * theta);
  }
  // At alpha_star the coupling piece theta - alpha(1+theta) is one of the binding terms.
  if (!limit) b.log_factor = "b_n^2";
  return b;
}

MuRate mu_generalized_rate(double mu, double theta) {
  if (!(mu > 0.0 && mu < 0.5)) throw DomainError("mu must lie in (0, 1/2)");
  if (!(theta > 0.0)) throw DomainError("covariance decay exponent theta must be positive");
  MuRate r;
  r.exponent = std::isinf(theta) ? mu : mu * theta / (mu + 1.0 + theta);
  r.raw = {2.0 * mu / (1.0 - 2.0 * mu), 3.0, true};
  r.clipped = r.raw;
  if (r.clipped.lo <= 2.0) r.clipped = {2.0, 3.0, false};
  return r;
}

std::vector<ExponentPiece> component_exponents(double alpha, double q, double theta) {
  require_q_theta(q, theta);
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("block exponent alpha must lie in (0, 1)");
  const bool limit = std::isinf(theta);

  std::vector<ExponentPiece> pieces;
  pieces.push_back({"remainder_tail", q * alpha / 8.0, true, std::nullopt});

  ExponentPiece coupling{"coupling", 0.0, true, std::nullopt};
  if (limit || alpha < 2.0 * theta / (3.0 + 2.0 * theta)) {
    coupling.exponent = alpha / 2.0;
    coupling.log_factor = "1/b_n";
  } else if (alpha < theta / (1.0 + theta)) {
    coupling.exponent = theta - alpha * (1.0 + theta);
    coupling.log_factor = "b_n^2";
  } else {
    coupling.valid = false;
  }
  pieces.push_back(coupling);

  pieces.push_back({"cf_product", std::min(alpha * (q - 2.0) / 2.0, alpha / 2.0), true, std::nullopt});

  ExponentPiece gaussian{"gaussian_cf", 0.0, true, std::nullopt};
  if (limit || alpha <= 2.0 * theta / (1.0 + 2.0 * theta)) {
    gaussian.exponent = alpha / 2.0;
    gaussian.log_factor = "1/b_n";
  } else {
    gaussian.exponent = (1.0 - alpha) * theta;
  }
  pieces.push_back(gaussian);

  pieces.push_back({"smoothing", 3.0 * alpha / 8.0, true, std::nullopt});
  return pieces;
}

double min_exponent(const std::vector<ExponentPiece>& pieces) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces) m = std::min(m, p.valid ? p.exponent : 0.0);
  return m;
}

OptimalAlpha optimal_alpha(double q, double theta) {
  require_q_theta(q, theta);
  if (std::isinf(theta)) {
    // Every piece increases in alpha; the supremum sits at alpha -> 1.
    return {1.0, clt_rate_exponent(q, theta).exponent};
  }

  // Linear forms that the pieces take on some alpha-region.
  const std::vector<Line> lines = {
      {0.0, q / 8.0},
      {0.0, 0.5},
      {theta, -(1.0 + theta)},
      {0.0, (q - 2.0) / 2.0},
      {theta, -theta},
      {0.0, 3.0 / 8.0},
  };

  std::vector<double> candidates = {
      2.0 * theta / (3.0 + 2.0 * theta), theta / (1.0 + theta), 2.0 * theta / (1.0 + 2.0 * theta),
      2.0 * theta / (q + 2.0 * theta),   8.0 * theta / (q + 8.0 + 8.0 * theta),
      8.0 * theta / (11.0 + 8.0 * theta),
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) candidates.push_back(intersect(lines[i], lines[j]));
  }
  std::erase_if(candidates, [](double a) { return !(a > 0.0 && a < 1.0); });
  std::sort(candidates.begin(), candidates.end());

  // The min-exponent is continuous and piecewise linear with kinks only at
  // candidate points, and vanishes at both ends, so its maximum is attained
  // at a candidate.
  OptimalAlpha best{0.0, -1.0};
  for (double a : candidates) {
    const double e = min_exponent(component_exponents(a, q, theta));
    if (e > best.exponent * (1.0 + 1e-14) + 1e-300) best = {a, e};
  }
  return best;
}

OpenInterval epsilon_window(double q, double lambda, double alpha) {
  if (!(q > 2.0)) throw DomainError("moment order q must exceed 2");
  return {0.0, (q * alpha - lambda) / (2.0 * q)};
}

ModDevWindows moddev_windows(double q, double theta, double lambda) {
  require_q_theta(q, theta);
  if (!(lambda >= 0.0)) throw DomainError("lambda must be nonnegative");
  ModDevWindows w;
  w.lambda = lambda;
  w.lambda_admissible = lambda < (q - 2.0) / 2.0;
  w.feasible = theta > 1.0 + lambda;
  const double hi = std::isinf(theta) ? 1.0 : (2.0 * theta - lambda) / (2.0 * theta + 2.0);
  if (w.feasible) {
    w.alpha_window = {0.5, hi};
    w.epsilon_window = epsilon_window(q, lambda, 0.5 * (w.alpha_window.lo + w.alpha_window.hi));
  } else {
    w.alpha_window = {0.5, std::min(hi, 0.5)};
    w.epsilon_window = {0.0, 0.0};
  }
  return w;
}

double frolov_block_threshold(double alpha, double q) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("block exponent alpha must lie in (0, 1)");
  if (!(q > 2.0)) throw DomainError("moment order q must exceed 2");
  return alpha * (q - 2.0);
}

}  // namespace assoc
