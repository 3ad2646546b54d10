#include "assoclab/innovation.hpp"

#include <cmath>
#include <sstream>

#include "assoclab/errors.hpp"

namespace assoc {

InnovationLaw InnovationLaw::standard_gaussian() { return {InnovationKind::StandardGaussian, 0.0}; }

InnovationLaw InnovationLaw::centered_exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw DomainError("centered-exponential rate must be a positive finite number");
  }
  return {InnovationKind::CenteredExponential, rate};
}

InnovationLaw InnovationLaw::centered_pareto(double tail_index) {
  if (!(tail_index > 2.0) || !std::isfinite(tail_index)) {
    throw DomainError("centered-pareto tail index must exceed 2 (finite variance)");
  }
  return {InnovationKind::CenteredPareto, tail_index};
}

double InnovationLaw::variance() const noexcept {
  switch (kind_) {
    case InnovationKind::StandardGaussian:
      return 1.0;
    case InnovationKind::CenteredExponential:
      return 1.0 / (param_ * param_);
    case InnovationKind::CenteredPareto: {
      const double b = param_;
      return b / ((b - 1.0) * (b - 1.0) * (b - 2.0));
    }
  }
  return 0.0;
}

double InnovationLaw::third_central_moment() const noexcept {
  switch (kind_) {
    case InnovationKind::StandardGaussian:
      return 0.0;
    case InnovationKind::CenteredExponential:
      return 2.0 / (param_ * param_ * param_);
    case InnovationKind::CenteredPareto: {
      if (param_ <= 3.0) return std::numeric_limits<double>::infinity();
      const double b = param_;
      // skewness * sd^3
      const double skew = 2.0 * (1.0 + b) / (b - 3.0) * std::sqrt((b - 2.0) / b);
      return skew * std::pow(variance(), 1.5);
    }
  }
  return 0.0;
}

double InnovationLaw::q_max() const noexcept {
  if (kind_ == InnovationKind::CenteredPareto) return param_;
  return std::numeric_limits<double>::infinity();
}

void InnovationLaw::require_moment(double q) const {
  if (!(q < q_max())) {
    std::ostringstream os;
    os << "moment of order " << q << " is infinite for " << name() << " (q_max = " << q_max() << ")";
    throw MomentError(os.str());
  }
}

double InnovationLaw::draw(Engine& rng) const {
  switch (kind_) {
    case InnovationKind::StandardGaussian:
      return std::normal_distribution<double>{0.0, 1.0}(rng);
    case InnovationKind::CenteredExponential:
      return std::exponential_distribution<double>{param_}(rng) - 1.0 / param_;
    case InnovationKind::CenteredPareto: {
      // inverse transform on (0,1]; generate_canonical is in [0,1)
      const double u = 1.0 - std::generate_canonical<double, 53>(rng);
      return std::pow(u, -1.0 / param_) - param_ / (param_ - 1.0);
    }
  }
  return 0.0;
}

double InnovationLaw::draw_sum(Engine& rng, std::uint64_t count) const {
  if (count == 0) return 0.0;
  if (count == 1) return draw(rng);
  const double c = static_cast<double>(count);
  switch (kind_) {
    case InnovationKind::StandardGaussian:
      return std::normal_distribution<double>{0.0, std::sqrt(c)}(rng);
    case InnovationKind::CenteredExponential:
      return std::gamma_distribution<double>{c, 1.0 / param_}(rng) - c / param_;
    case InnovationKind::CenteredPareto: {
      double s = 0.0;
      for (std::uint64_t i = 0; i < count; ++i) s += draw(rng);
      return s;
    }
  }
  return 0.0;
}

namespace {

template <typename Sink>
void generate(const InnovationLaw& law, Engine& rng, std::size_t count, Sink&& sink) {
  switch (law.kind()) {
    case InnovationKind::StandardGaussian: {
      std::normal_distribution<double> dist{0.0, 1.0};
      for (std::size_t i = 0; i < count; ++i) sink(i, dist(rng));
      break;
    }
    case InnovationKind::CenteredExponential: {
      const double rate = law.parameter();
      std::exponential_distribution<double> dist{rate};
      for (std::size_t i = 0; i < count; ++i) sink(i, dist(rng) - 1.0 / rate);
      break;
    }
    case InnovationKind::CenteredPareto:
      for (std::size_t i = 0; i < count; ++i) sink(i, law.draw(rng));
      break;
  }
}

}  // namespace

void InnovationLaw::fill(Engine& rng, std::span<double> out) const {
  generate(*this, rng, out.size(), [&](std::size_t i, double z) { out[i] = z; });
}

double InnovationLaw::weighted_sum(Engine& rng, std::span<const double> w) const {
  double s = 0.0;
  generate(*this, rng, w.size(), [&](std::size_t i, double z) { s += w[i] * z; });
  return s;
}

std::string InnovationLaw::name() const {
  std::ostringstream os;
  switch (kind_) {
    case InnovationKind::StandardGaussian:
      os << "standard-gaussian";
      break;
    case InnovationKind::CenteredExponential:
      os << "centered-exponential(rate=" << param_ << ")";
      break;
    case InnovationKind::CenteredPareto:
      os << "centered-pareto(tail_index=" << param_ << ")";
      break;
  }
  return os.str();
}

}  // namespace assoc
