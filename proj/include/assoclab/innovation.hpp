#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>

#include "assoclab/random.hpp"

namespace assoc {

enum class InnovationKind { StandardGaussian, CenteredExponential, CenteredPareto };

// Law of the iid innovations Z_t driving a moving-average model. Every law is
// centered; variance and the largest finite absolute moment order are known
// in closed form.
class InnovationLaw {
 public:
  static InnovationLaw standard_gaussian();
  static InnovationLaw centered_exponential(double rate);
  // Pareto with scale 1 and tail index beta > 2, shifted to mean zero.
  static InnovationLaw centered_pareto(double tail_index);

  InnovationKind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }
  double variance() const noexcept;
  double third_central_moment() const noexcept;

  // Supremum of orders r with E|Z|^r finite; +inf for gaussian and exponential.
  double q_max() const noexcept;
  // Throws MomentError unless q < q_max().
  void require_moment(double q) const;
  bool is_gaussian() const noexcept { return kind_ == InnovationKind::StandardGaussian; }
  bool is_symmetric() const noexcept { return is_gaussian(); }

  double draw(Engine& rng) const;
  // One draw of Z_1 + ... + Z_count. Exact in law; O(1) for the gaussian and
  // exponential families, O(count) for Pareto.
  double draw_sum(Engine& rng, std::uint64_t count) const;
  // Fills `out` with iid draws, in order.
  void fill(Engine& rng, std::span<double> out) const;
  // sum_i w_i Z_i over fresh iid draws Z_i, drawn in index order.
  double weighted_sum(Engine& rng, std::span<const double> w) const;

  std::string name() const;

  friend bool operator==(const InnovationLaw&, const InnovationLaw&) = default;

 private:
  InnovationLaw(InnovationKind kind, double param) : kind_(kind), param_(param) {}

  InnovationKind kind_;
  double param_;  // rate for exponential, tail index for Pareto, unused for gaussian
};

}  // namespace assoc
