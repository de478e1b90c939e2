// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/error.hpp"

namespace l1rev {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::dimension_mismatch: return "dimension mismatch";
    case ErrorCode::numerical: return "numerical failure";
    case ErrorCode::parse: return "parse error";
    case ErrorCode::io: return "i/o error";
    case ErrorCode::unknown_method: return "unknown method";
    case ErrorCode::too_large: return "instance too large";
    case ErrorCode::internal: return "internal error";
  }
  return "unknown error";
}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace l1rev
