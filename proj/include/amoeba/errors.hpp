#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace amoeba {

enum class ErrorKind {
  NonIntegralSolve,
  DegenerateGenerators,
  DimensionMismatch,
  NumericallyAmbiguous,
  BoxTooLarge,
  UnsupportedRank,
  SingularSample,
  OrderUnresolved,
  BoxTooSmall,
  BoundChainViolation,
  InvalidInput,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every failure the library reports carries a kind and the module that raised it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& what)
      : std::runtime_error(std::string(module) + ": " + std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        module_(std::move(module)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& module() const { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

}  // namespace amoeba
