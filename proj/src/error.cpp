#include "eqstop/error.hpp"

namespace eqstop {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoInteriorCrossing: return "NoInteriorCrossing";
    case ErrorCode::TimeOrder: return "TimeOrder";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::EmptyPath: return "EmptyPath";
    case ErrorCode::InvalidBeta: return "InvalidBeta";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

}  // namespace eqstop
