#ifndef GROWTHLAB_ERRORS_HPP
#define GROWTHLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace growthlab {

// Error taxonomy mirrors the CLI exit codes: usage 1, math precondition 2,
// budget 3.

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace growthlab

#endif
