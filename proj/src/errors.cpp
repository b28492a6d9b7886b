#include "amoeba/errors.hpp"

namespace amoeba {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonIntegralSolve: return "NonIntegralSolve";
    case ErrorKind::DegenerateGenerators: return "DegenerateGenerators";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NumericallyAmbiguous: return "NumericallyAmbiguous";
    case ErrorKind::BoxTooLarge: return "BoxTooLarge";
    case ErrorKind::UnsupportedRank: return "UnsupportedRank";
    case ErrorKind::SingularSample: return "SingularSample";
    case ErrorKind::OrderUnresolved: return "OrderUnresolved";
    case ErrorKind::BoxTooSmall: return "BoxTooSmall";
    case ErrorKind::BoundChainViolation: return "BoundChainViolation";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace amoeba
