#include "frontlab/error.hpp"

namespace frontlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonPositiveK: return "NonPositiveK";
    case ErrorCode::ExponentOrder: return "ExponentOrder";
    case ErrorCode::QTooSmall: return "QTooSmall";
    case ErrorCode::NTooSmall: return "NTooSmall";
    case ErrorCode::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidTailParams: return "InvalidTailParams";
    case ErrorCode::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorCode::OriginUndefined: return "OriginUndefined";
    case ErrorCode::NotCZero: return "NotCZero";
    case ErrorCode::WrongKind: return "WrongKind";
    case ErrorCode::NoWaveForm: return "NoWaveForm";
    case ErrorCode::NotAConnection: return "NotAConnection";
    case ErrorCode::WrongVelocitySide: return "WrongVelocitySide";
    case ErrorCode::InitialOrderViolated: return "InitialOrderViolated";
    case ErrorCode::CFLViolated: return "CFLViolated";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::IntegrationFailure: return "IntegrationFailure";
    case ErrorCode::IntegrityViolation: return "IntegrityViolation";
    case ErrorCode::ShootUndetermined: return "ShootUndetermined";
    case ErrorCode::BracketDegenerate: return "BracketDegenerate";
    case ErrorCode::BracketInconsistent: return "BracketInconsistent";
    case ErrorCode::BracketExhausted: return "BracketExhausted";
    case ErrorCode::RangeViolated: return "RangeViolated";
    case ErrorCode::MonotonicityViolated: return "MonotonicityViolated";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IntegrationFailure:
    case ErrorCode::IntegrityViolation:
    case ErrorCode::ShootUndetermined:
    case ErrorCode::BracketDegenerate:
    case ErrorCode::BracketInconsistent:
    case ErrorCode::BracketExhausted:
    case ErrorCode::RangeViolated:
    case ErrorCode::MonotonicityViolated:
    case ErrorCode::DomainTooSmall:
      return false;
    default:
      return true;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace frontlab
