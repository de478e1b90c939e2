// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace l1rev {

enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  numerical,
  parse,
  io,
  unknown_method,
  too_large,
  internal,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception thrown by every core routine. The C API maps `code()` onto its
/// status enum one-to-one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace l1rev
