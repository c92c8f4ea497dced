#include "hypertor/errors.hpp"

namespace hypertor {

std::string_view errorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnitIdeal: return "UnitIdeal";
    case ErrorKind::IllDefinedMap: return "IllDefinedMap";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::DegreeBoundExceeded: return "DegreeBoundExceeded";
    case ErrorKind::WindowTooShort: return "WindowTooShort";
    case ErrorKind::FactorizationCheckFailed: return "FactorizationCheckFailed";
    case ErrorKind::UndefinedTheta: return "UndefinedTheta";
    case ErrorKind::StabilizationFailed: return "StabilizationFailed";
    case ErrorKind::InfiniteLengthAt: return "InfiniteLengthAt";
    case ErrorKind::ZeroModule: return "ZeroModule";
    case ErrorKind::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorKind::NotFiniteIntersection: return "NotFiniteIntersection";
    case ErrorKind::WrongCharacteristic: return "WrongCharacteristic";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnboundName: return "UnboundName";
  }
  return "Unknown";
}

}  // namespace hypertor
