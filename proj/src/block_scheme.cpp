#include "assoclab/block_scheme.hpp"

#include <cmath>
#include <sstream>

#include "assoclab/errors.hpp"

namespace assoc {

BlockScheme make_block_scheme(std::uint64_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw SchemeError("block scheme needs 0 < alpha < 1");
  if (n < 4) throw SchemeError("block scheme needs n >= 4");

  // The 1e-9 nudge keeps exact integer powers (e.g. 4096^0.5) from rounding down.
  const double raw = std::pow(static_cast<double>(n), 1.0 - alpha);
  const auto p = static_cast<std::uint64_t>(std::floor(raw + 1e-9));

  BlockScheme s;
  s.n = n;
  s.alpha = alpha;
  s.block_len = p;
  if (p < 1 || 2 * p >= n) {
    std::ostringstream os;
    os << "block scheme (n=" << n << ", alpha=" << alpha << ") gives p_n=" << p
       << " which violates p_n < n/2";
    throw SchemeError(os.str());
  }
  s.block_count = n / p;
  s.remainder_len = n - s.block_count * p;
  return s;
}

double truncation_frequency(std::uint64_t n, double alpha, double log_power) {
  if (n < 3) throw DomainError("truncation_frequency needs n >= 3 (log n > 1)");
  if (!(log_power < 0.0)) throw DomainError("truncation_frequency needs a negative log power");
  const double nd = static_cast<double>(n);
  return std::pow(std::log(nd), log_power) * std::pow(nd, alpha / 2.0);
}

}  // namespace assoc
