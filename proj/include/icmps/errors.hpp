// errors.hpp — Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace icmps {

// Bad or inconsistent user-facing configuration (config file, CLI flags).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A recurrence or factorization lost numerical meaning (e.g. a vanishing
// Stieltjes norm); `index` names the offending step.
class NumericalBreakdown : public std::runtime_error {
 public:
  NumericalBreakdown(const std::string& what, int index)
      : std::runtime_error(what + " (index " + std::to_string(index) + ")"),
        index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_{-1};
};

// Inverting a singular value that is numerically zero would destroy the
// canonical gauge of the state.
class GaugeError : public std::runtime_error {
 public:
  explicit GaugeError(const std::string& what) : std::runtime_error(what) {}
};

// A result failed its own convergence or tolerance check.
class AccuracyError : public std::runtime_error {
 public:
  explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace icmps
