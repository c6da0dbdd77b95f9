#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace rosette {

enum class ErrorCode {
  InvalidArgument,
  DegenerateInput,
  ParseError,
  ValidationFailed,
  DegenerateBoundaryVertex,
  NonConvergence,
  NothingToSolve,
  LayoutInconsistency,
  EmptySelection,
  TooFewNeighbors,
  GadgetGeometryError,
  DegeneratePolygon,
  IncompatibleAngle,
  StarDistortion,
  MotifFailure,
  EmptyScene,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::DegenerateBoundaryVertex: return "DegenerateBoundaryVertex";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NothingToSolve: return "NothingToSolve";
    case ErrorCode::LayoutInconsistency: return "LayoutInconsistency";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::TooFewNeighbors: return "TooFewNeighbors";
    case ErrorCode::GadgetGeometryError: return "GadgetGeometryError";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::IncompatibleAngle: return "IncompatibleAngle";
    case ErrorCode::StarDistortion: return "StarDistortion";
    case ErrorCode::MotifFailure: return "MotifFailure";
    case ErrorCode::EmptyScene: return "EmptyScene";
  }
  return "Unknown";
}

/// Base of every exception thrown by the library. `code()` tells callers
/// which contract was violated without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::string field, std::size_t line, const std::string& what)
      : Error(ErrorCode::ParseError, locate(field, line) + what),
        field_(std::move(field)),
        line_(line) {}

  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string locate(const std::string& field, std::size_t line) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += field + ": ";
    return out;
  }

  std::string field_;
  std::size_t line_;
};

class NonConvergence : public Error {
 public:
  NonConvergence(double worst_residual, int sweeps)
      : Error(ErrorCode::NonConvergence,
              "solver did not converge after " + std::to_string(sweeps) +
                  " sweeps (worst angle-sum residual " + std::to_string(worst_residual) + ")"),
        worst_residual_(worst_residual),
        sweeps_(sweeps) {}

  double worst_residual() const noexcept { return worst_residual_; }
  int sweeps() const noexcept { return sweeps_; }

 private:
  double worst_residual_;
  int sweeps_;
};

/// Thrown by the disk solver when there is no interior vertex; carries the
/// prescribed boundary radii so the caller can still lay them out.
class NothingToSolve : public Error {
 public:
  explicit NothingToSolve(std::map<int, double> radii)
      : Error(ErrorCode::NothingToSolve, "complex has no interior vertex"),
        radii_(std::move(radii)) {}

  const std::map<int, double>& radii() const noexcept { return radii_; }

 private:
  std::map<int, double> radii_;
};

class StarDistortion : public Error {
 public:
  explicit StarDistortion(std::size_t index)
      : Error(ErrorCode::StarDistortion,
              "chord bisector " + std::to_string(index) + " misses the inner circle"),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class MotifFailure : public Error {
 public:
  explicit MotifFailure(int polygon)
      : Error(ErrorCode::MotifFailure,
              "rays of polygon " + std::to_string(polygon) + " cannot be matched"),
        polygon_(polygon) {}

  int polygon() const noexcept { return polygon_; }

 private:
  int polygon_;
};

}  // namespace rosette
