#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frontlab {

enum class ErrorCode {
  // parameter / input validation
  NonFinite,
  NonPositiveK,
  ExponentOrder,
  QTooSmall,
  NTooSmall,
  DeltaOutOfRange,
  InvalidArgument,
  InvalidTailParams,
  TargetOutOfRange,
  OriginUndefined,
  NotCZero,
  WrongKind,
  NoWaveForm,
  NotAConnection,
  WrongVelocitySide,
  InitialOrderViolated,
  CFLViolated,
  TooFewSamples,
  NoCrossing,
  IoFailure,
  // numerical failures
  IntegrationFailure,
  IntegrityViolation,
  ShootUndetermined,
  BracketDegenerate,
  BracketInconsistent,
  BracketExhausted,
  RangeViolated,
  MonotonicityViolated,
  DomainTooSmall,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors caused by caller input rather than by the numerics.
bool is_validation_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace frontlab
