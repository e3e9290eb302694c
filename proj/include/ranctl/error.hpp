#pragma once

#include <stdexcept>
#include <string>

namespace ranctl {

/// Malformed input: bad config, wrong vector length, out-of-range parameter.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ranctl
