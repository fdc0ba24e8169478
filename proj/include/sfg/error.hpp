#pragma once

#include <stdexcept>
#include <string>

namespace sfg {

/// Base class for every error raised by the simulator. `stage()` names the
/// pipeline stage that raised it so the CLI can report attribution.
class Error : public std::runtime_error {
 public:
  Error(std::string stage, const std::string& what)
      : std::runtime_error(what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

class InvalidSpecError : public Error {
 public:
  explicit InvalidSpecError(const std::string& what) : Error("lattice", what) {}
};

class InsufficientRegionError : public Error {
 public:
  explicit InsufficientRegionError(const std::string& what) : Error("lattice", what) {}
};

class InvalidModelError : public Error {
 public:
  explicit InvalidModelError(const std::string& what) : Error("donor-model", what) {}
};

class FitFailureError : public Error {
 public:
  FitFailureError(const std::string& what, double residual)
      : Error("integrals", what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class IllConditionedGeometryError : public Error {
 public:
  IllConditionedGeometryError(const std::string& what, double overlap)
      : Error("integrals", what), overlap_(overlap) {}
  double overlap() const noexcept { return overlap_; }

 private:
  double overlap_;
};

class DependencyError : public Error {
 public:
  DependencyError(std::string stage, const std::string& what) : Error(std::move(stage), what) {}
};

class SizeError : public Error {
 public:
  explicit SizeError(const std::string& what) : Error("spins", what) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error("spins", what) {}
};

class PreconditionError : public Error {
 public:
  PreconditionError(std::string stage, const std::string& what) : Error(std::move(stage), what) {}
};

/// Structured-file parse/validation failure. `line` is 1-based, 0 when unknown.
class ScenarioError : public Error {
 public:
  ScenarioError(const std::string& what, std::size_t line, std::size_t column = 0,
                std::string stage = "scenario")
      : Error(std::move(stage), format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    std::string s = "line " + std::to_string(line);
    if (column != 0) s += ", column " + std::to_string(column);
    return s + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace sfg
