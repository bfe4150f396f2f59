#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gerbes {

// Error taxonomy shared by the library and the CLI.  `kind` is a stable
// machine-readable tag; `witness` holds the offending indices when a check
// can point at them (meaning depends on the kind, documented at throw sites).
enum class ErrorKind {
  NotAssociative,
  NoIdentity,
  NotInvertible,
  OrderLimitExceeded,
  NotAbelian,
  NotACocycle,
  NotCentral,
  NotSubgroup,
  DomainMismatch,
  NoSolutionAtLevel,
  SizeLimitExceeded,
  InvalidAction,
  NotEquivariant,
  RestrictionNotCharacter,
  EtaSolveFailed,
  CompatibilityFailed,
  ComparisonNotIso,
  ClassMismatch,
  NotNondegenerate,
  LevelTooCoarse,
  InternalVerificationFailed,
  InvalidInput,
  Overflow,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::vector<long long> witness = {})
      : std::runtime_error(std::move(message)), kind_(kind), witness_(std::move(witness)) {}

  ErrorKind kind() const { return kind_; }
  const std::vector<long long>& witness() const { return witness_; }

  // CLI contract: 0 ok, 1 mathematical negative, 2 input error, 3 resource cap.
  int exit_code() const {
    switch (kind_) {
      case ErrorKind::InvalidInput:
        return 2;
      case ErrorKind::OrderLimitExceeded:
      case ErrorKind::SizeLimitExceeded:
      case ErrorKind::Overflow:
        return 3;
      default:
        return 1;
    }
  }

 private:
  ErrorKind kind_;
  std::vector<long long> witness_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string message,
                              std::vector<long long> witness = {}) {
  throw Error(kind, std::move(message), std::move(witness));
}

}  // namespace gerbes
