#pragma once

#include <stdexcept>
#include <string>

namespace nt {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Request refused because it would exceed a fixed resource budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value produced by user-supplied rules broke a declared contract.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid experiment configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A checkable hypothesis of a lemma does not hold on the given input.
class HypothesisError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace nt
