#include "xizeros/error.hpp"

namespace xizeros {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidInterval: return "InvalidInterval";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::PositivityViolation: return "PositivityViolation";
    case ErrorKind::TailNotBounded: return "TailNotBounded";
    case ErrorKind::InsufficientEntries: return "InsufficientEntries";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::NewtonDiverged: return "NewtonDiverged";
    case ErrorKind::ZeroOnContour: return "ZeroOnContour";
    case ErrorKind::SubdivisionLimit: return "SubdivisionLimit";
    case ErrorKind::InsufficientZeros: return "InsufficientZeros";
    case ErrorKind::EmptyTable: return "EmptyTable";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace xizeros
