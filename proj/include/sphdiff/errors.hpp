#pragma once

#include <stdexcept>
#include <string>

namespace sphdiff {

/// Raised when an argument lies outside the domain of an operation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a computation would need more work than the configured caps allow.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sphdiff
