#include "inet/error.hpp"

namespace inet {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DisjointnessViolation: return "DisjointnessViolation";
    case ErrorKind::IllTyped: return "IllTyped";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::NotInvolutive: return "NotInvolutive";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::PortReuse: return "PortReuse";
    case ErrorKind::CellPortIsLoop: return "CellPortIsLoop";
    case ErrorKind::CellPortUnwired: return "CellPortUnwired";
    case ErrorKind::NotTotal: return "NotTotal";
    case ErrorKind::NotInTarget: return "NotInTarget";
    case ErrorKind::WiringNotPreserved: return "WiringNotPreserved";
    case ErrorKind::CellPortNotPreserved: return "CellPortNotPreserved";
    case ErrorKind::CellNotPreserved: return "CellNotPreserved";
    case ErrorKind::PrincipalNotPreserved: return "PrincipalNotPreserved";
    case ErrorKind::LabelNotPreserved: return "LabelNotPreserved";
    case ErrorKind::NotFreePort: return "NotFreePort";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::Mismatch: return "Mismatch";
    case ErrorKind::SymbolMismatch: return "SymbolMismatch";
    case ErrorKind::StaleRedex: return "StaleRedex";
    case ErrorKind::NoRule: return "NoRule";
    case ErrorKind::DuplicateRule: return "DuplicateRule";
    case ErrorKind::CutIsFixedPoint: return "CutIsFixedPoint";
    case ErrorKind::CutNotBetweenAxioms: return "CutNotBetweenAxioms";
    case ErrorKind::NotAlmostInjective: return "NotAlmostInjective";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::optional<Port> port)
    : std::runtime_error(message), kind_(kind), port_(port) {}

ParseError::ParseError(ErrorKind kind, const std::string& message, int line, int column,
                       bool invariant)
    : Error(kind, message), line_(line), column_(column), invariant_(invariant) {}

}  // namespace inet
