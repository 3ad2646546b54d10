#include "assoclab/simulate.hpp"

#include <algorithm>

#include "assoclab/errors.hpp"

namespace assoc {

std::vector<double> sample_path(const MAModel& model, std::uint64_t n, Engine& rng) {
  if (n < 1) throw DomainError("sample_path needs n >= 1");
  const std::size_t K = model.order();
  // z[i] holds Z_{i+1-K}
  std::vector<double> z(n + K);
  model.innovation().fill(rng, z);

  const auto a = model.weights();
  std::vector<double> x(n);
  for (std::uint64_t t = 0; t < n; ++t) {
    double s = 0.0;
    for (std::size_t k = 0; k <= K; ++k) s += a[k] * z[t + K - k];
    x[t] = s;
  }
  return x;
}

std::vector<double> sample_path(const MAModel& model, std::uint64_t n, std::uint64_t seed) {
  Engine rng{seed};
  return sample_path(model, n, rng);
}

BlockSums block_sums(std::span<const double> path, const BlockScheme& scheme) {
  if (path.size() != scheme.n) throw SchemeError("block_sums: path length differs from scheme n");
  BlockSums out;
  out.blocks.resize(scheme.block_count);
  for (std::uint64_t j = 0; j < scheme.block_count; ++j) {
    double s = 0.0;
    for (std::uint64_t i = j * scheme.block_len; i < (j + 1) * scheme.block_len; ++i) s += path[i];
    out.blocks[j] = s;
  }
  double r = 0.0;
  for (std::uint64_t i = scheme.covered(); i < scheme.n; ++i) r += path[i];
  out.remainder = r;
  return out;
}

BlockSums path_block_sums(const MAModel& model, const BlockScheme& scheme, Engine& rng) {
  const std::size_t K = model.order();
  const std::uint64_t n = scheme.n;
  std::vector<double> z(n + K);
  model.innovation().fill(rng, z);

  // prefix[i] = z[0] + ... + z[i-1]; Z_s sits at z[s + K - 1].
  std::vector<double> prefix(n + K + 1, 0.0);
  for (std::size_t i = 0; i < z.size(); ++i) prefix[i + 1] = prefix[i] + z[i];

  // sum_{t=first}^{last} X_t = sum_k a_k (sum_{s=first-k}^{last-k} Z_s)
  const auto a = model.weights();
  auto window = [&](std::uint64_t first, std::uint64_t last) {
    double s = 0.0;
    for (std::size_t k = 0; k <= K; ++k) {
      const std::uint64_t lo = first + K - k - 1;  // index of Z_{first-k}
      const std::uint64_t hi = last + K - k;       // one past Z_{last-k}
      s += a[k] * (prefix[hi] - prefix[lo]);
    }
    return s;
  };

  BlockSums out;
  out.blocks.resize(scheme.block_count);
  for (std::uint64_t j = 1; j <= scheme.block_count; ++j) {
    out.blocks[j - 1] = window(scheme.block_begin(j), scheme.block_end(j));
  }
  out.remainder = scheme.remainder_len > 0 ? window(scheme.covered() + 1, n) : 0.0;
  return out;
}

WindowSampler::WindowSampler(const MAModel& model, std::uint64_t length)
    : model_(&model), length_(length) {
  if (length < 1) throw DomainError("window length must be at least 1");
  const auto a = model.weights();
  const std::uint64_t K = model.order();

  // prefix_a[i] = a_0 + ... + a_{i-1}
  std::vector<double> prefix_a(K + 2, 0.0);
  for (std::uint64_t k = 0; k <= K; ++k) prefix_a[k + 1] = prefix_a[k] + a[k];

  // Weight of Z_s is sum of a_k over k with 1 <= s + k <= L.
  auto weight = [&](std::int64_t s) {
    const auto L = static_cast<std::int64_t>(length);
    const std::int64_t k_lo = std::max<std::int64_t>(0, 1 - s);
    const std::int64_t k_hi = std::min<std::int64_t>(static_cast<std::int64_t>(K), L - s);
    return k_hi < k_lo ? 0.0 : prefix_a[k_hi + 1] - prefix_a[k_lo];
  };

  const auto L = static_cast<std::int64_t>(length);
  const auto Ki = static_cast<std::int64_t>(K);
  if (L > Ki) {
    for (std::int64_t s = 1 - Ki; s <= 0; ++s) edge_weights_.push_back(weight(s));
    for (std::int64_t s = L - Ki + 1; s <= L; ++s) edge_weights_.push_back(weight(s));
    interior_count_ = static_cast<std::uint64_t>(L - Ki);
    interior_weight_ = prefix_a[K + 1];
  } else {
    for (std::int64_t s = 1 - Ki; s <= L; ++s) edge_weights_.push_back(weight(s));
  }
}

double WindowSampler::draw(Engine& rng) const {
  const auto& law = model_->innovation();
  double s = law.weighted_sum(rng, edge_weights_);
  if (interior_count_ > 0) s += interior_weight_ * law.draw_sum(rng, interior_count_);
  return s;
}

std::vector<double> coupling_block_sums(const MAModel& model, const BlockScheme& scheme, Engine& rng) {
  const WindowSampler block(model, scheme.block_len);
  std::vector<double> out(scheme.block_count);
  for (auto& y : out) y = block.draw(rng);
  return out;
}

std::vector<double> coupling_block_sums(const MAModel& model, const BlockScheme& scheme,
                                        std::uint64_t seed) {
  Engine rng{seed};
  return coupling_block_sums(model, scheme, rng);
}

}  // namespace assoc
