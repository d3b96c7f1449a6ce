#pragma once

#include <stdexcept>

namespace cpw {

/// Parameters outside the domain of an operation (degenerate Pochhammer
/// denominators, odd dimension differences, singular diagonals, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// An internal identity that must hold by construction was violated.
struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace cpw
