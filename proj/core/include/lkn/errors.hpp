#pragma once

#include <stdexcept>
#include <string>

namespace lkn {

// Raised when parameters fall outside the range where the inequalities hold,
// e.g. p <= d.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace lkn
