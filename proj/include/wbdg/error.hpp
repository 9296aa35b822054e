#pragma once

#include <stdexcept>
#include <string>

namespace wbdg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: extents, case names, config keys, boundary kinds.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Physically inadmissible state (negative density, pressure, depth ...).
class StateError : public Error {
 public:
  using Error::Error;
};

// Equilibrium data below the sonic bound: no root on any branch.
class NoEquilibriumError : public StateError {
 public:
  using StateError::StateError;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Misuse of an API, e.g. evaluating a cell polynomial outside its cell.
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace wbdg
