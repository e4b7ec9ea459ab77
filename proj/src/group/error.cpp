#include "iodc/error.hpp"

namespace iodc {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedElement: return "MalformedElement";
    case ErrorCode::MalformedScalar: return "MalformedScalar";
    case ErrorCode::MalformedSignature: return "MalformedSignature";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidIdentity: return "InvalidIdentity";
    case ErrorCode::InvalidEphemeral: return "InvalidEphemeral";
    case ErrorCode::InvalidDesignatedPoint: return "InvalidDesignatedPoint";
    case ErrorCode::InvalidSharedPoint: return "InvalidSharedPoint";
    case ErrorCode::OwnerBindingMismatch: return "OwnerBindingMismatch";
    case ErrorCode::TableIntegrity: return "TableIntegrity";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::IntegrityMismatch: return "IntegrityMismatch";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::MacMismatch: return "MacMismatch";
    case ErrorCode::InvalidMeasurement: return "InvalidMeasurement";
    case ErrorCode::UnknownOp: return "UnknownOp";
    case ErrorCode::RngFailure: return "RngFailure";
    case ErrorCode::KeyVerFailed: return "KeyVerFailed";
    case ErrorCode::VerifyFailed: return "VerifyFailed";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace iodc
