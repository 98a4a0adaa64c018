#include "nlc/error.hpp"

namespace nlc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonZeroMean: return "NonZeroMean";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::NonPositiveInput: return "NonPositiveInput";
    case ErrorKind::InvalidInitialData: return "InvalidInitialData";
    case ErrorKind::PositivityLoss: return "PositivityLoss";
    case ErrorKind::SingularMassMatrix: return "SingularMassMatrix";
    case ErrorKind::PicardDivergence: return "PicardDivergence";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::MismatchedSnapshots: return "MismatchedSnapshots";
    case ErrorKind::ParityMismatch: return "ParityMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace nlc
