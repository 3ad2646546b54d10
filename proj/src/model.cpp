#include "assoclab/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "assoclab/errors.hpp"

namespace assoc {

MAModel::MAModel(std::vector<double> weights, InnovationLaw innovation)
    : weights_(std::move(weights)), innovation_(innovation), weight_sum_(0.0) {
  if (weights_.empty()) throw DomainError("moving-average model needs at least one weight");
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw DomainError("moving-average weights must be finite and nonnegative (association)");
    }
  }
  if (!(weights_.front() > 0.0)) throw DomainError("leading weight a_0 must be strictly positive");
  weight_sum_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

bool MAModel::is_iid() const noexcept {
  return std::all_of(weights_.begin() + 1, weights_.end(), [](double w) { return w == 0.0; });
}

std::string MAModel::describe() const {
  std::ostringstream os;
  os << "MA(" << order() << ") with " << innovation_.name() << " innovations";
  return os.str();
}

std::vector<double> geometric_weights(double rho, std::size_t K) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("geometric weights need 0 < rho < 1");
  if (K < 1) throw DomainError("geometric weights need K >= 1");
  std::vector<double> a(K + 1);
  a[0] = 1.0;
  for (std::size_t k = 1; k <= K; ++k) a[k] = a[k - 1] * rho;
  return a;
}

std::vector<double> power_weights(double beta, std::size_t K) {
  if (!(beta > 1.0) || !std::isfinite(beta)) throw DomainError("power weights need beta > 1");
  std::vector<double> a(K + 1);
  for (std::size_t k = 0; k <= K; ++k) a[k] = std::pow(static_cast<double>(k + 1), -beta);
  return a;
}

}  // namespace assoc
