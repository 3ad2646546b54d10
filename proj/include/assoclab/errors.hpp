#pragma once

#include <stdexcept>
#include <string>

namespace assoc {

// Parameter outside its mathematical domain (rho not in (0,1), q <= 2, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Block geometry that violates p_n < n/2, m_n >= 2 or 0 < alpha < 1.
class SchemeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A moment of order >= q_max was requested from an innovation law.
class MomentError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Two exact routes to the same quantity disagree.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Monte Carlo budget too small for the requested tail event.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace assoc
