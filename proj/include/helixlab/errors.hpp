#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace helixlab {

/// Base class for every failure mode this library reports.
class GeomError : public std::runtime_error {
public:
  explicit GeomError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A map produced a non-finite value (NaN/Inf) or was evaluated outside the
/// mathematical domain of one of its functions (log of a nonpositive, ...).
class NumericalDomain : public GeomError {
public:
  explicit NumericalDomain(const std::string& msg, std::size_t position = 0)
      : GeomError(position == 0
                      ? msg
                      : msg + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;  // 1-based character position when raised by an AST
};

class OutOfDomain : public GeomError {
  using GeomError::GeomError;
};

/// Jacobian rank dropped below the parameter dimension at a sample point.
class RankDeficient : public GeomError {
public:
  RankDeficient(const std::string& msg, Eigen::VectorXd at)
      : GeomError(msg), at(std::move(at)) {}
  Eigen::VectorXd at;
};

class SingularMetric : public GeomError {
  using GeomError::GeomError;
};

/// Vector passed as a unit normal fails the norm or membership check.
class NotNormal : public GeomError {
  using GeomError::GeomError;
};

class IrregularCurve : public GeomError {
  using GeomError::GeomError;
};

/// Frenet rank too low for the requested frame vector.
class DegenerateFrame : public GeomError {
public:
  explicit DegenerateFrame(const std::string& msg, double t = 0.0)
      : GeomError(msg), t(t) {}
  double t;
};

class UmbilicEncountered : public GeomError {
public:
  UmbilicEncountered(const std::string& msg, Eigen::VectorXd at)
      : GeomError(msg), at(std::move(at)) {}
  Eigen::VectorXd at;
};

class LeftDomain : public GeomError {
public:
  LeftDomain(const std::string& msg, Eigen::VectorXd exit_point)
      : GeomError(msg), exit_point(std::move(exit_point)) {}
  Eigen::VectorXd exit_point;
};

class NotInSpace : public GeomError {
  using GeomError::GeomError;
};

class CodimensionMismatch : public GeomError {
  using GeomError::GeomError;
};

class DegenerateDecomposition : public GeomError {
  using GeomError::GeomError;
};

class UnknownEntry : public GeomError {
  using GeomError::GeomError;
};

class BadParameter : public GeomError {
  using GeomError::GeomError;
};

// --- expression parser errors -------------------------------------------

class SyntaxError : public GeomError {
public:
  SyntaxError(std::size_t position, std::string expected)
      : GeomError("syntax error at position " + std::to_string(position) +
                  ": expected " + expected),
        position(position),
        expected(std::move(expected)) {}
  std::size_t position;  // 1-based character position
  std::string expected;
};

class UnknownIdentifier : public GeomError {
public:
  UnknownIdentifier(std::size_t position, const std::string& name)
      : GeomError("unknown identifier '" + name + "' at position " +
                  std::to_string(position)),
        position(position),
        name(name) {}
  std::size_t position;
  std::string name;
};

class ArityError : public GeomError {
public:
  ArityError(std::size_t position, const std::string& fn, std::size_t got)
      : GeomError("function '" + fn + "' takes 1 argument, got " +
                  std::to_string(got) + " (at position " +
                  std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

class ComponentCountMismatch : public GeomError {
  using GeomError::GeomError;
};

}  // namespace helixlab
