#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mapwss {

enum class ErrorCode {
  ParseError,
  UnknownVariable,
  DuplicateVariable,
  InvalidCardinality,
  InvalidScope,
  TableSizeMismatch,
  NonFiniteEntry,
  NotBinaryPairwise,
  SignMismatch,
  ZeroAssociativity,
  TooLarge,
  NotSingleEnodeForm,
  NotBipartite,
  Inconsistent,
  ObjectiveMismatch,
  IntractableTopology,
  NotSupermodular,
  BadIndices,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported as an Error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mapwss
