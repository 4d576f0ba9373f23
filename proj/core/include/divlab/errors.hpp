#pragma once

#include <stdexcept>
#include <string>

namespace divlab {

enum class ErrorKind {
  NotStarShaped,
  DegenerateBoundary,
  RootFindFailure,
  LengthMismatch,
  BasePointMismatch,
  OrderMismatch,
  OrderExhausted,
  OutsideConvergence,
  SourceTargetCoincide,
  DegreeCap,
  IllConditioned,
  IncompatibleFlux,
  NonzeroMean,
  TruncationTooSmall,
  InsufficientOrders,
  ConfigError,
};

const char* to_string(ErrorKind k);

/// Error type carried by every throwing operation in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace divlab
