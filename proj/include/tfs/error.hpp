#pragma once

#include <stdexcept>
#include <string>

namespace tfs {

// Every failure the library can signal, as a closed set of codes.  The CLI
// maps these onto exit codes; tests match on them instead of message text.
enum class Errc {
  InvalidFrame,          // malformed Frame (dimensions, non-finite entries, bad flags)
  LengthMismatch,        // coefficient vector length != number of frame vectors
  NegativeCoefficient,   // scaling coefficient negative or non-finite
  DimensionMismatch,     // matrix/vector shapes incompatible with the operation
  DimensionTooSmall,     // ambient dimension below what the operation supports
  NotUnitNorm,           // operation requires a unit-norm frame
  AllZeroFrame,          // every frame vector is zero
  NotSymmetric,          // matrix fails the symmetry tolerance
  NoConvergence,         // eigensolver sweep limit exhausted
  NotPSD,                // matrix has an eigenvalue below the PSD tolerance
  IterationLimit,        // hull membership could not certify either answer
  IterationCap,          // perceptron update cap exhausted
  EmptyNullSpace,        // solution region requested but the Gramian is invertible
  OutOfRange,            // scalar parameter outside its legal open interval
  ConeCriterionViolated, // planar decomposition requested but the cone test fails
  AccumulationFailed,    // planar decomposition finished but does not verify
  ParseError,            // malformed input document
  NormViolation,         // input claims unit norm but a vector is off tolerance
  UnsupportedDimension,  // sample export only covers n = 2 and n = 3
  UsageError,            // bad command line
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidFrame: return "InvalidFrame";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NegativeCoefficient: return "NegativeCoefficient";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::NotUnitNorm: return "NotUnitNorm";
    case Errc::AllZeroFrame: return "AllZeroFrame";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::NotPSD: return "NotPSD";
    case Errc::IterationLimit: return "IterationLimit";
    case Errc::IterationCap: return "IterationCap";
    case Errc::EmptyNullSpace: return "EmptyNullSpace";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::ConeCriterionViolated: return "ConeCriterionViolated";
    case Errc::AccumulationFailed: return "AccumulationFailed";
    case Errc::ParseError: return "ParseError";
    case Errc::NormViolation: return "NormViolation";
    case Errc::UnsupportedDimension: return "UnsupportedDimension";
    case Errc::UsageError: return "UsageError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace tfs
