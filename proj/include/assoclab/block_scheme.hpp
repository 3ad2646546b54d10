#pragma once

#include <cstdint>

namespace assoc {

// Block geometry for a sample of length n: m blocks of length p = floor(n^{1-alpha})
// followed by a remainder of n - m p <= p terms.
struct BlockScheme {
  std::uint64_t n = 0;
  double alpha = 0.0;
  std::uint64_t block_len = 0;   // p_n
  std::uint64_t block_count = 0; // m_n
  std::uint64_t remainder_len = 0;

  // 1-based first and last index of block j (1 <= j <= m; j = m+1 is the remainder).
  std::uint64_t block_begin(std::uint64_t j) const noexcept { return (j - 1) * block_len + 1; }
  std::uint64_t block_end(std::uint64_t j) const noexcept {
    return j <= block_count ? j * block_len : n;
  }
  std::uint64_t covered() const noexcept { return block_len * block_count; }
};

// Throws SchemeError when alpha is outside (0,1), p_n >= n/2 or m_n < 2.
BlockScheme make_block_scheme(std::uint64_t n, double alpha);

// Truncation frequency T = (log n)^b n^{alpha/2} (b < 0).
double truncation_frequency(std::uint64_t n, double alpha, double log_power = -0.1);

}  // namespace assoc
