#ifndef AFENV_ERROR_HPP
#define AFENV_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace afenv {

enum class ErrorKind {
  // digraphs
  MissingLoop,
  OutOfRange,
  EmptyProjection,
  // regular maps
  UnknownDomainEdge,
  DiagonalToOffDiagonal,
  DiagonalOverlap,
  UndominatedUnit,
  NonOrthogonalSum,
  UnitOutsideCodomain,
  NotIrreducible,
  NotInjective,
  EdgeNotPreserved,
  RangeDisconnected,
  RangeOverlap,
  DomainMismatch,
  // numerics
  NonFinite,
  NumericMismatch,
  // direct systems
  ShapeMismatch,
  NotCompressionType,
  NotStabilized,
  InconsistentJClass,
  Indeterminate,
  ZeroRow,
  ZeroColumn,
  NonUnitalColumn,
  Overflow,
  // envelope
  MissingQ,
  NonStationary,
  NotEssentiallyUnital,
  // io
  SchemaError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Exception carrying a machine-readable kind and, for file input, the JSON
/// pointer of the offending value.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message, std::string pointer = {})
      : std::runtime_error(message), kind_(kind), cause_(kind), pointer_(std::move(pointer)) {}

  /// Wraps a module error raised while reading input at `pointer`.
  Error(ErrorKind kind, const Error& cause, std::string pointer)
      : std::runtime_error(cause.what()), kind_(kind), cause_(cause.kind()),
        pointer_(std::move(pointer)) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Kind of the wrapped error; equals kind() for unwrapped errors.
  ErrorKind cause() const noexcept { return cause_; }
  const std::string& pointer() const noexcept { return pointer_; }

private:
  ErrorKind kind_;
  ErrorKind cause_;
  std::string pointer_;
};

}  // namespace afenv

#endif  // AFENV_ERROR_HPP
