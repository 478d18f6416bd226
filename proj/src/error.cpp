#include "mfas/error.hpp"

namespace mfas {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFormat: return "FormatError";
    case ErrorCode::kPoset: return "PosetError";
    case ErrorCode::kWeight: return "WeightError";
    case ErrorCode::kUnknownName: return "UnknownName";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kGuardExceeded: return "GuardExceeded";
    case ErrorCode::kBudgetExhausted: return "BudgetExhausted";
    case ErrorCode::kNotIntegral: return "NotIntegral";
    case ErrorCode::kNotFeasible: return "NotFeasible";
    case ErrorCode::kPosetViolated: return "PosetViolated";
    case ErrorCode::kNotHemimetric: return "NotHemimetric";
    case ErrorCode::kLemmaViolated: return "LemmaViolated";
    case ErrorCode::kNonTermination: return "NonTermination";
  }
  return "UnknownError";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotIntegral:
    case ErrorCode::kNotFeasible:
    case ErrorCode::kPosetViolated:
    case ErrorCode::kNotHemimetric:
      return 1;
    case ErrorCode::kFormat:
    case ErrorCode::kPoset:
    case ErrorCode::kWeight:
    case ErrorCode::kUnknownName:
    case ErrorCode::kDimensionMismatch:
      return 2;
    case ErrorCode::kCapExceeded:
    case ErrorCode::kGuardExceeded:
    case ErrorCode::kBudgetExhausted:
      return 3;
    case ErrorCode::kLemmaViolated:
    case ErrorCode::kNonTermination:
      return 4;
  }
  return 4;
}

}  // namespace mfas
