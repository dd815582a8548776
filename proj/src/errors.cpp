// SPDX-License-Identifier: MIT
#include "tamagawa/errors.hpp"

namespace tamagawa {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimeP: return "NonPrimeP";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::ZeroToPrecision: return "ZeroToPrecision";
    case ErrorCode::PrecisionExceeded: return "PrecisionExceeded";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::ThreeNotInvertible: return "ThreeNotInvertible";
    case ErrorCode::InvalidType: return "InvalidType";
    case ErrorCode::InconsistentFamily: return "InconsistentFamily";
    case ErrorCode::UnsupportedClass: return "UnsupportedClass";
    case ErrorCode::NoExactFormula: return "NoExactFormula";
    case ErrorCode::IndexDivisor: return "IndexDivisor";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::RamifiedUnsupported: return "RamifiedUnsupported";
    case ErrorCode::BTooSmall: return "BTooSmall";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

}  // namespace tamagawa
