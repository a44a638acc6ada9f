// Copyright 2026 The vgfrft Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VGFRFT_ERRORS_HPP
#define VGFRFT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace vgfrft {

/// Failure categories. The numeric values are part of the C ABI (see vgfrft.h).
enum class ErrorCode : int {
  argument = 1,     // invalid parameter values
  size = 2,         // sequence length not a power of two / empty
  contract = 3,     // inconsistent grid or violated precondition
  grid_support = 4, // truncated CF, density mass outside grid
  span = 5,         // evaluation point outside the interpolation-safe span
  numeric = 6,      // non-finite accumulation, diagnostics residue
  parse = 7,
  ordering = 8,
  domain = 9,
  io = 10,
  model_cdf = 11,
  degenerate = 12,
  outlier_limit = 13,
  moments = 14,
  internal = 99,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) raise(code, message);
}

}  // namespace vgfrft

#endif  // VGFRFT_ERRORS_HPP
