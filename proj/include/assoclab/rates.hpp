#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace assoc {

// Closed-form exponents of the Berry-Esseen bound for associated sequences
// with q-th moments and covariance decay exponent theta. Every rate is
// n^{-exponent}; theta = +infinity is accepted and gives the limiting value.

enum class Regime { LowQ, MidQ, HighQ };

std::string_view regime_name(Regime r) noexcept;

struct RateBound {
  double exponent = 0.0;
  Regime regime = Regime::HighQ;
  double alpha_star = 0.0;
  std::optional<std::string> log_factor;  // slowly varying factor dropped from the exponent
};

// theta(q-2)/(q+2 theta) for 2 < q <= 8/3, q theta/(q+8+8 theta) for
// 8/3 < q < 3, 3 theta/(11+8 theta) for q >= 3. Throws DomainError for
// q <= 2 or theta <= 0.
RateBound clt_rate_exponent(double q, double theta);

struct QInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;  // false once clipped to q > 2
  bool empty() const noexcept { return lo_closed ? lo > hi : lo >= hi; }
  bool contains(double q) const noexcept {
    return !empty() && (lo_closed ? q >= lo : q > lo) && q <= hi;
  }
};

struct MuRate {
  double exponent = 0.0;
  QInterval raw;      // [2mu/(1-2mu), 3]
  QInterval clipped;  // raw intersected with (2, 3]
};

// mu theta/(mu+1+theta) for 0 < mu < 1/2.
MuRate mu_generalized_rate(double mu, double theta);

struct ExponentPiece {
  std::string name;
  double exponent = 0.0;
  bool valid = true;  // false where the bound gives no decay
  std::optional<std::string> log_factor;
};

// remainder_tail, coupling, cf_product, gaussian_cf, smoothing, in that order.
std::vector<ExponentPiece> component_exponents(double alpha, double q, double theta);

// Smallest exponent over the pieces; an invalid piece counts as 0.
double min_exponent(const std::vector<ExponentPiece>& pieces);

struct OptimalAlpha {
  double alpha_star = 0.0;
  double exponent = 0.0;
};

// argmax over alpha in (0,1) of min_exponent(component_exponents(alpha, q, theta)),
// by enumerating region boundaries and pairwise intersections of the linear
// pieces. Ties resolve to the smallest alpha.
OptimalAlpha optimal_alpha(double q, double theta);

struct OpenInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const noexcept { return !(lo < hi); }
  bool contains(double x) const noexcept { return x > lo && x < hi; }
};

struct ModDevWindows {
  double lambda = 0.0;
  OpenInterval alpha_window;    // (1/2, (2 theta - lambda)/(2 theta + 2))
  OpenInterval epsilon_window;  // at the midpoint of alpha_window; empty when infeasible
  bool feasible = false;        // theta > 1 + lambda
  bool lambda_admissible = false;  // lambda < (q-2)/2
};

ModDevWindows moddev_windows(double q, double theta, double lambda);
// (0, (q alpha - lambda)/(2q))
OpenInterval epsilon_window(double q, double lambda, double alpha);

// alpha (q-2): the largest lambda for moderate deviations of coupling-block sums.
double frolov_block_threshold(double alpha, double q);

}  // namespace assoc
