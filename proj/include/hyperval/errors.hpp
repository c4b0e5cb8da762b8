#pragma once

#include <stdexcept>
#include <string>

namespace hyperval {

/// Malformed input or a violated precondition. Distinct from an axiom
/// failure, which is reported through a ValidationReport instead.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace hyperval
