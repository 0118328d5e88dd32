#pragma once

#include <stdexcept>
#include <string>

namespace cryowire {

// Error taxonomy mirrors the CLI exit codes: validation 2, infeasible 3,
// numeric range 4.

/// A scenario, config file, or model object violates its schema/invariants.
class validation_error : public std::runtime_error {
  public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// An optimization problem has no solution within its search space.
class infeasible_error : public std::runtime_error {
  public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

/// A numeric argument is outside the physical or tabulated domain.
class range_error : public std::runtime_error {
  public:
    explicit range_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cryowire
