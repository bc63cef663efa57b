#pragma once

#include <stdexcept>
#include <string>

namespace dseries {

// std::invalid_argument covers bad sizes/ranges; std::domain_error covers
// evaluation outside the convergent region.

struct NonInvertibleError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// Raised when a requested computation exceeds a configured budget.
struct ResourceError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

} // namespace dseries
