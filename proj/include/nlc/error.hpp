#pragma once

#include <stdexcept>
#include <string>

namespace nlc {

enum class ErrorKind {
  NonZeroMean,
  NegativeInput,
  NonPositiveInput,
  InvalidInitialData,
  PositivityLoss,
  SingularMassMatrix,
  PicardDivergence,
  StepUnderflow,
  NonPositiveTemperature,
  GridMismatch,
  MismatchedSnapshots,
  ParityMismatch,
  ParseError,
  ValidationError,
  IoError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nlc
