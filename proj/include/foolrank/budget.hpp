#pragma once

#include <stdexcept>

namespace foolrank {

// An exhaustive search would enumerate more candidates than allowed.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace foolrank
