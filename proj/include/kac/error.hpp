#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kac {

enum class ErrorKind {
  Parse,
  InvalidArgument,
  AlphabetMismatch,
  NotInitiallyConnected,
  NotComplete,
  NotMinimal,
  EmptySourceSet,
  TestUndefinedOnSpec,
  PrefixUndefined,
  NotHarmonized,
  CoverNotMinimal,
  CoverWordMissing,
  CoverWordUndefined,
  NotAncestorClosed,
  NotPairwiseApart,
  NotApart,
  NodeBudgetExceeded,
  BudgetExceeded,
  BudgetExhausted,
  InitialSuiteRejected,
};

std::string_view to_string(ErrorKind kind);

/// All library failures are reported through this exception; the kind is
/// stable and meant to be switched on, the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kac
