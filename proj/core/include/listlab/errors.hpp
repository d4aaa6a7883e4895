#pragma once

#include <stdexcept>
#include <string>

namespace listlab {

// Thrown when an exhaustive oracle or enumeration would exceed its configured
// state budget. Callers are expected to shrink the instance.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace listlab
