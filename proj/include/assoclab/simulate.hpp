#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "assoclab/block_scheme.hpp"
#include "assoclab/model.hpp"
#include "assoclab/random.hpp"

namespace assoc {

struct BlockSums {
  std::vector<double> blocks;  // Y_1 .. Y_m
  double remainder = 0.0;      // Y_{m+1}; 0 when the remainder is empty
};

// X_1..X_n of a stationary path. The K innovations Z_{1-K}..Z_0 are drawn
// first (burn-in), then Z_1..Z_n, all from `rng` in index order.
std::vector<double> sample_path(const MAModel& model, std::uint64_t n, Engine& rng);
std::vector<double> sample_path(const MAModel& model, std::uint64_t n, std::uint64_t seed);

// Exact partition sums of a path; each block is summed left to right.
BlockSums block_sums(std::span<const double> path, const BlockScheme& scheme);

// Block sums of a fresh path, computed from innovation prefix sums in
// O(n + m K) without materialising the path. Consumes `rng` exactly as
// sample_path does, so the same engine state yields the same path.
BlockSums path_block_sums(const MAModel& model, const BlockScheme& scheme, Engine& rng);

/// Sampler for the window sum X_1 + ... + X_L of a stationary path.
///
/// The window sum is the linear functional sum_s w_s Z_s over innovations
/// s = 1-K..L. Weights at the two edges (at most 2K of them) vary; every
/// interior innovation carries the full weight sum A = sum_k a_k. Edge
/// innovations are drawn one by one and the interior contributes
/// A * (Z_1 + ... + Z_{L-K}), drawn in one shot by InnovationLaw::draw_sum.
/// The result has exactly the law of S_L.
class WindowSampler {
 public:
  WindowSampler(const MAModel& model, std::uint64_t length);

  double draw(Engine& rng) const;

  std::uint64_t length() const noexcept { return length_; }
  std::span<const double> edge_weights() const noexcept { return edge_weights_; }
  std::uint64_t interior_count() const noexcept { return interior_count_; }
  double interior_weight() const noexcept { return interior_weight_; }

 private:
  const MAModel* model_;
  std::uint64_t length_;
  std::vector<double> edge_weights_;
  std::uint64_t interior_count_ = 0;
  double interior_weight_ = 0.0;
};

// m_n independent copies of Y_{1,n}, i.e. independent length-p_n window sums.
std::vector<double> coupling_block_sums(const MAModel& model, const BlockScheme& scheme, Engine& rng);
std::vector<double> coupling_block_sums(const MAModel& model, const BlockScheme& scheme,
                                        std::uint64_t seed);

}  // namespace assoc
