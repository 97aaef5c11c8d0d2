#include "primform/error.hpp"

namespace primform {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "division by zero";
    case ErrorKind::NonInvertibleLeadingCoefficient: return "non-invertible leading coefficient";
    case ErrorKind::NonIsolatedSingularity: return "non-isolated singularity";
    case ErrorKind::DegenerateGramMatrix: return "degenerate Gram matrix";
    case ErrorKind::DegenerateMetric: return "degenerate metric";
    case ErrorKind::FlatCoordinateSolver: return "flat coordinate solver failure";
    case ErrorKind::IntegrabilityViolation: return "integrability violation";
    case ErrorKind::LogObstruction: return "log obstruction";
    case ErrorKind::InconsistentSystem: return "inconsistent system";
    case ErrorKind::CapsExceeded: return "caps exceeded";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::InvalidSpec: return "invalid spec";
    case ErrorKind::Parse: return "parse error";
  }
  return "error";
}

}  // namespace primform
