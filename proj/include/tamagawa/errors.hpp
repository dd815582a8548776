// SPDX-License-Identifier: MIT
/**
 * @file errors.hpp
 * @brief Error codes shared by every module of the library.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace tamagawa {

enum class ErrorCode {
  NonPrimeP,
  ReducibleModulus,
  ZeroToPrecision,
  PrecisionExceeded,
  InsufficientPrecision,
  ThreeNotInvertible,
  InvalidType,
  InconsistentFamily,
  UnsupportedClass,
  NoExactFormula,
  IndexDivisor,
  NotSquarefree,
  RamifiedUnsupported,
  BTooSmall,
  BudgetExceeded,
  InvalidArgument,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tamagawa
