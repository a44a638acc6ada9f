// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#include "vgfrft/errors.hpp"

namespace vgfrft {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::argument: return "argument";
    case ErrorCode::size: return "size";
    case ErrorCode::contract: return "contract";
    case ErrorCode::grid_support: return "grid_support";
    case ErrorCode::span: return "span";
    case ErrorCode::numeric: return "numeric";
    case ErrorCode::parse: return "parse";
    case ErrorCode::ordering: return "ordering";
    case ErrorCode::domain: return "domain";
    case ErrorCode::io: return "io";
    case ErrorCode::model_cdf: return "model_cdf";
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::outlier_limit: return "outlier_limit";
    case ErrorCode::moments: return "moments";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

void raise(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace vgfrft
