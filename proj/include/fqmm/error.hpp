#pragma once

#include <stdexcept>
#include <string>

namespace fqmm {

// Raised when an argument violates an operation's precondition (index out of
// range, level above the cap, malformed eigenvalue label, ...).
class PreconditionError : public std::domain_error {
 public:
  explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

// Raised when a numerical identity that must hold exactly (up to a stated
// tolerance) does not.
class ConsistencyError : public std::runtime_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fqmm
