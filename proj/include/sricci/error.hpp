#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sricci {

enum class ErrorKind {
  EmptyInput,
  MalformedFacet,
  FaceNotInComplex,
  NotPure,
  NotOrientable,
  DimensionOutOfRange,
  NonFiniteMatrix,
  NoEigenConvergence,
  HeterogeneousDegreeSum,
  DisconnectedSupports,
  DisconnectedPair,
  DisconnectedComplex,
  BoundaryDegreeZero,
  InvalidMeasure,
  NotAdjacent,
  NonPositiveK,
  NoQualifyingEigenvalue,
  NotRegular,
  IsolatedVertex,
  NonPositiveGraphCurvature,
  InvalidWeights,
  LpUnbounded,
  ParseError,
  WeightCoverageError,
  UnknownGenerator,
  BadParams,
  UnknownCommand,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::MalformedFacet: return "MalformedFacet";
    case ErrorKind::FaceNotInComplex: return "FaceNotInComplex";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::NotOrientable: return "NotOrientable";
    case ErrorKind::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorKind::NonFiniteMatrix: return "NonFiniteMatrix";
    case ErrorKind::NoEigenConvergence: return "NoEigenConvergence";
    case ErrorKind::HeterogeneousDegreeSum: return "HeterogeneousDegreeSum";
    case ErrorKind::DisconnectedSupports: return "DisconnectedSupports";
    case ErrorKind::DisconnectedPair: return "DisconnectedPair";
    case ErrorKind::DisconnectedComplex: return "DisconnectedComplex";
    case ErrorKind::BoundaryDegreeZero: return "BoundaryDegreeZero";
    case ErrorKind::InvalidMeasure: return "InvalidMeasure";
    case ErrorKind::NotAdjacent: return "NotAdjacent";
    case ErrorKind::NonPositiveK: return "NonPositiveK";
    case ErrorKind::NoQualifyingEigenvalue: return "NoQualifyingEigenvalue";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::IsolatedVertex: return "IsolatedVertex";
    case ErrorKind::NonPositiveGraphCurvature: return "NonPositiveGraphCurvature";
    case ErrorKind::InvalidWeights: return "InvalidWeights";
    case ErrorKind::LpUnbounded: return "LpUnbounded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::WeightCoverageError: return "WeightCoverageError";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::UnknownCommand: return "UnknownCommand";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can report it by name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sricci
