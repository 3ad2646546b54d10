#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "assoclab/innovation.hpp"

namespace assoc {

// X_t = sum_{k=0}^{K} a_k Z_{t-k} with a_k >= 0 and iid centered Z.
// Nonnegative weights make {X_t} a strictly stationary associated sequence.
class MAModel {
 public:
  MAModel(std::vector<double> weights, InnovationLaw innovation);

  std::span<const double> weights() const noexcept { return weights_; }
  const InnovationLaw& innovation() const noexcept { return innovation_; }
  // Truncation lag K; covariances vanish beyond it.
  std::size_t order() const noexcept { return weights_.size() - 1; }
  double weight_sum() const noexcept { return weight_sum_; }
  bool is_iid() const noexcept;

  std::string describe() const;

 private:
  std::vector<double> weights_;
  InnovationLaw innovation_;
  double weight_sum_;
};

// (1, rho, rho^2, ..., rho^K); rho in (0,1).
std::vector<double> geometric_weights(double rho, std::size_t K);
// a_k = (k+1)^{-beta}, k = 0..K; beta > 1.
std::vector<double> power_weights(double beta, std::size_t K);

}  // namespace assoc
