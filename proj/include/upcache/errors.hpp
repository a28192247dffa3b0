#pragma once

#include <stdexcept>
#include <string>

namespace upcache {

// Bad user-supplied parameters. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A caller broke an operation's precondition (e.g. an expired item handed to cbs()).
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// Simulator state went inconsistent mid-episode; always a bug, never bad input.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace upcache
