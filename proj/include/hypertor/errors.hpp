#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypertor {

enum class ErrorKind {
  DivisionByZero,
  InvalidArgument,
  RingMismatch,
  ShapeMismatch,
  UnitIdeal,
  IllDefinedMap,
  NotAComplex,
  NotHomogeneous,
  DegreeBoundExceeded,
  WindowTooShort,
  FactorizationCheckFailed,
  UndefinedTheta,
  StabilizationFailed,
  InfiniteLengthAt,
  ZeroModule,
  HypothesisNotMet,
  NotFiniteIntersection,
  WrongCharacteristic,
  SyntaxError,
  UnboundName,
};

std::string_view errorKindName(ErrorKind kind);

/// Every failure raised by the engine. `kind()` is the stable name used in
/// JSON output; `index()` and `dimension()` carry the Tor index and support
/// dimension for the errors that have them (-1 otherwise).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, int index = -1, int dimension = -1)
      : std::runtime_error(message), kind_(kind), index_(index), dimension_(dimension) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view kindName() const noexcept { return errorKindName(kind_); }
  int index() const noexcept { return index_; }
  int dimension() const noexcept { return dimension_; }

 private:
  ErrorKind kind_;
  int index_;
  int dimension_;
};

}  // namespace hypertor
