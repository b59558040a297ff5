#pragma once

#include <stdexcept>
#include <string>

namespace stab {

/// Two operands come from different Euclidean backends.
class BackendMismatch : public std::invalid_argument {
 public:
  explicit BackendMismatch(const std::string& what)
      : std::invalid_argument("backend mismatch: " + what) {}
};

/// An input lies outside the domain of an operation that is otherwise well
/// formed, e.g. a module with free part fed to a functor with localized ends.
class DomainViolation : public std::domain_error {
 public:
  explicit DomainViolation(const std::string& what) : std::domain_error(what) {}
};

}  // namespace stab
