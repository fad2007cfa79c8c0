#pragma once

#include <stdexcept>
#include <string>

namespace stratamc {

// Bad user input: malformed files, mismatched dimensions, out-of-range values.
class invalid_input_error : public std::runtime_error {
 public:
  explicit invalid_input_error(const std::string& what) : std::runtime_error(what) {}
};

// Configuration rejected at load time (schema violations, non-PD priors, ...).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure that survived recovery attempts (factorization failures, singular kernels).
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stratamc
