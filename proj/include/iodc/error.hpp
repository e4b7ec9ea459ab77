#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iodc {

// Error classes surface verbatim on the CLI's stderr, so the names are part
// of the external interface.
enum class ErrorCode {
  MalformedElement,
  MalformedScalar,
  MalformedSignature,
  InvalidParams,
  InvalidIdentity,
  InvalidEphemeral,
  InvalidDesignatedPoint,
  InvalidSharedPoint,
  OwnerBindingMismatch,
  TableIntegrity,
  BadMagic,
  UnsupportedVersion,
  IntegrityMismatch,
  TruncatedFile,
  MacMismatch,
  InvalidMeasurement,
  UnknownOp,
  RngFailure,
  KeyVerFailed,
  VerifyFailed,
  IoError,
  Usage,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace iodc
