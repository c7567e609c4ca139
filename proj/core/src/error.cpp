#include "fsum/error.hpp"

namespace fsum {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroCumulativeWeight: return "ZeroCumulativeWeight";
    case ErrorKind::RowOutOfRange: return "RowOutOfRange";
    case ErrorKind::EmptyRow: return "EmptyRow";
    case ErrorKind::InvalidMatrix: return "InvalidMatrix";
    case ErrorKind::InvalidClassPair: return "InvalidClassPair";
    case ErrorKind::NotInClass: return "NotInClass";
    case ErrorKind::InsufficientResolution: return "InsufficientResolution";
    case ErrorKind::DegreeExceeded: return "DegreeExceeded";
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::InvalidDelta: return "InvalidDelta";
    case ErrorKind::ZeroModulus: return "ZeroModulus";
    case ErrorKind::InvalidModulus: return "InvalidModulus";
    case ErrorKind::InvalidGamma: return "InvalidGamma";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace fsum
