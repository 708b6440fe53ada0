#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bailbench {

// A caller broke a documented precondition (empty input, invalid pairing).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unreadable/unwritable files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration file or command-line combination.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A text does not fit its token budget. component() names the part that
// has to shrink.
class ContextBudgetError : public std::length_error {
 public:
  ContextBudgetError(std::string component, std::size_t required, std::size_t budget)
      : std::length_error(component + " needs " + std::to_string(required) + " estimated tokens but the budget is " +
                          std::to_string(budget) + "; truncate by at least " + std::to_string(required - budget)),
        component_(std::move(component)),
        required_(required),
        budget_(budget) {}
  const std::string& component() const noexcept { return component_; }
  std::size_t required() const noexcept { return required_; }
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::string component_;
  std::size_t required_;
  std::size_t budget_;
};

}  // namespace bailbench
