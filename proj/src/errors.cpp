#include "symwave/errors.hpp"

namespace symwave {

const char* to_string(ErrorKind kind) {
  switch (kind) {
#define SYMWAVE_NAME_CASE(name) \
  case ErrorKind::name:         \
    return #name;
    SYMWAVE_ERROR_KINDS(SYMWAVE_NAME_CASE)
#undef SYMWAVE_NAME_CASE
  }
  return "Unknown";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Unsolvable:
    case ErrorKind::JetConditionFailed:
    case ErrorKind::SymmetryUnattainable:
      return kExitUnsolvable;
    case ErrorKind::VerificationFailed:
    case ErrorKind::PostconditionFailed:
    case ErrorKind::InternalInconsistency:
    case ErrorKind::VMDeficit:
      return kExitVerificationFailure;
    default:
      return kExitConfigError;
  }
}

}  // namespace symwave
