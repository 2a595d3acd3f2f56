#pragma once

#include <stdexcept>
#include <string>

namespace opk {

/// Requested problem size exceeds the configured memory guard.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Two-sided Lanczos lost biorthogonality or hit a serious breakdown.
/// Carries the recursion step at which the failure was detected.
class NumericalBreakdownError : public std::runtime_error {
 public:
  NumericalBreakdownError(const std::string& what, int step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

/// A projection basis failed to account for the full operator weight.
class BasisIncompleteError : public std::runtime_error {
 public:
  explicit BasisIncompleteError(const std::string& what) : std::runtime_error(what) {}
};

/// A population or complexity ratio had vanishing total weight.
class DegenerateStateError : public std::runtime_error {
 public:
  explicit DegenerateStateError(const std::string& what) : std::runtime_error(what) {}
};

/// An ensemble run was aborted (e.g. too many excluded realizations).
class AbortedRunError : public std::runtime_error {
 public:
  explicit AbortedRunError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace opk
