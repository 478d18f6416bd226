#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace mfas {

enum class ErrorCode {
  kFormat,
  kPoset,
  kWeight,
  kUnknownName,
  kDimensionMismatch,
  kCapExceeded,
  kGuardExceeded,
  kBudgetExhausted,
  kNotIntegral,
  kNotFeasible,
  kPosetViolated,
  kNotHemimetric,
  kLemmaViolated,
  kNonTermination,
};

std::string_view to_string(ErrorCode code);

// Process exit code for the command line front end:
// 1 infeasible/validation, 2 format, 3 guard/cap, 4 internal assertion.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// LemmaViolated / NonTermination carry a multi-line diagnostic dump.
class InternalAssertion : public Error {
 public:
  InternalAssertion(ErrorCode code, const std::string& what, std::string dump)
      : Error(code, what), dump_(std::move(dump)) {}

  const std::string& dump() const noexcept { return dump_; }

 private:
  std::string dump_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace mfas
