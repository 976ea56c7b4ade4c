#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace twogrp {

enum class ErrorCode {
  InvalidFactor,
  ShapeMismatch,
  NotAGroup,
  IndexOutOfRange,
  SizeBound,
  UnsupportedSpec,
  NotACocycle,
  NotNormalized,
  DegreeMismatch,
  TruncationMismatch,
  DimensionBound,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. `witness` carries the offending indices (a tuple of
/// group elements, a cell index, ...) when the failure has one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::int64_t> witness = {},
        std::string reason = {})
      : std::runtime_error(message),
        code_(code),
        witness_(std::move(witness)),
        reason_(std::move(reason)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::int64_t>& witness() const noexcept { return witness_; }
  /// Sub-classification, e.g. "associativity" for NotAGroup.
  const std::string& reason() const noexcept { return reason_; }

 private:
  ErrorCode code_;
  std::vector<std::int64_t> witness_;
  std::string reason_;
};

/// Outcome of an exhaustive check: `holds`, or the lexicographically first
/// failing tuple.
struct Verdict {
  bool holds = true;
  std::vector<std::int64_t> witness;
  std::string detail;

  explicit operator bool() const noexcept { return holds; }

  static Verdict pass() { return {}; }
  static Verdict fail(std::vector<std::int64_t> w, std::string detail = {}) {
    return Verdict{false, std::move(w), std::move(detail)};
  }
};

}  // namespace twogrp
