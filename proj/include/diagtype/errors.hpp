#pragma once

#include <stdexcept>

namespace diagtype {

/// Raised when an exact computation cannot finish inside its configured
/// budget, or when independent routes fail to agree.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace diagtype
