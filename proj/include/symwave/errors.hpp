#pragma once

#include <stdexcept>
#include <string>

namespace symwave {

#define SYMWAVE_ERROR_KINDS(X) \
  X(SingularMatrix) \
  X(NotExpanding) \
  X(NonIntegral) \
  X(BadOverride) \
  X(NotClosed) \
  X(NotUnimodular) \
  X(NotAppropriate) \
  X(BadCenter) \
  X(DigitIncompatible) \
  X(NotInStabilizer) \
  X(InternalInconsistency) \
  X(BackendMismatch) \
  X(ExactPathUnavailable) \
  X(PreconditionFailed) \
  X(PostconditionFailed) \
  X(Unsolvable) \
  X(NotInterpolatoryAtDigit) \
  X(SymmetryUnattainable) \
  X(UserPolyInvalid) \
  X(JetConditionFailed) \
  X(StepPreconditionFailed) \
  X(VMDeficit) \
  X(NotAbelian) \
  X(SpecialAssumptionFailed) \
  X(ParseError) \
  X(DuplicateExponent) \
  X(GridAmbiguous) \
  X(ConfigError) \
  X(VerificationFailed)

enum class ErrorKind {
#define SYMWAVE_ENUM_ENTRY(name) name,
  SYMWAVE_ERROR_KINDS(SYMWAVE_ENUM_ENTRY)
#undef SYMWAVE_ENUM_ENTRY
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

// Process exit codes used by the CLI.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailure = 2,
  kExitUnsolvable = 3,
  kExitConfigError = 4,
};

int exit_code_for(ErrorKind kind);

}  // namespace symwave
