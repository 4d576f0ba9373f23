#include "divlab/errors.hpp"

namespace divlab {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotStarShaped: return "NotStarShaped";
    case ErrorKind::DegenerateBoundary: return "DegenerateBoundary";
    case ErrorKind::RootFindFailure: return "RootFindFailure";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::BasePointMismatch: return "BasePointMismatch";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::OrderExhausted: return "OrderExhausted";
    case ErrorKind::OutsideConvergence: return "OutsideConvergence";
    case ErrorKind::SourceTargetCoincide: return "SourceTargetCoincide";
    case ErrorKind::DegreeCap: return "DegreeCap";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::IncompatibleFlux: return "IncompatibleFlux";
    case ErrorKind::NonzeroMean: return "NonzeroMean";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::InsufficientOrders: return "InsufficientOrders";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace divlab
