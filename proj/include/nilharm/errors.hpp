#pragma once

#include <stdexcept>
#include <string>

namespace nilharm {

// Thrown when a skew form B_lambda is (numerically) singular but an
// operation needs it invertible.
class NondegeneracyError : public std::runtime_error {
 public:
  explicit NondegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an integrand has visibly not decayed at the edge of its
// quadrature box, i.e. the requested integral is not trustworthy.
class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nilharm
