#pragma once

#include <stdexcept>
#include <string>

namespace scgl {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class MissingMode : public Error {
public:
  using Error::Error;
};

class InvalidResolution : public Error {
public:
  using Error::Error;
};

class ResolutionMismatch : public Error {
public:
  using Error::Error;
};

class ShapeMismatch : public Error {
public:
  using Error::Error;
};

class InsufficientLevels : public Error {
public:
  using Error::Error;
};

class DegeneratePoints : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

// Thrown when a trajectory's L2 norm crosses the blow-up guard; the run is
// aborted and the sample flagged, never silently truncated.
class DiagnosticBlowup : public Error {
public:
  DiagnosticBlowup(long step, double norm)
      : Error("solution norm " + std::to_string(norm) + " exceeded blow-up guard at step " +
              std::to_string(step)),
        step_(step),
        norm_(norm) {}

  long step() const { return step_; }
  double norm() const { return norm_; }

private:
  long step_;
  double norm_;
};

}  // namespace scgl
