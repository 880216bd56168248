#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dlip {

enum class ErrorKind {
  NonPrimeModulus,
  UnsupportedFamily,
  RingMismatch,
  NotAUnit,
  NotLocal,
  ComponentMismatch,
  ClosureTooLarge,
  NotAPowerOfQ,
  LengthMismatch,
  NotAChainRing,
  NotAParityCheck,
  PreconditionFailed,
  NonUnitLeadingCoefficient,
  NonUnitConstantTerm,
  NotCoprimeLength,
  NotADivisor,
  BrokenChain,
  CanonicalizationMismatch,
  MismatchedConstacyclicity,
  SameResidueLambda,
  NoSquareRootOfMinusOne,
  UnsupportedRing,
  ZeroCode,
  NegativeParameter,
  TauMismatch,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is reported through this one exception type; the
// kind lets callers (the CLI in particular) map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dlip
