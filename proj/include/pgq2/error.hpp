#pragma once

#include <stdexcept>
#include <string>

namespace pgq2 {

// Raised when caller-supplied data violates a precondition (bad d, odd
// multiplicity, a pair whose root does not square to its base, ...).
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when two independent routes to the same number disagree. On a
// correct build this never fires.
class consistency_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pgq2
