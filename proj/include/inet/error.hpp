#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace inet {

using Port = std::uint32_t;

enum class ErrorKind {
  DisjointnessViolation,
  IllTyped,
  NotInjective,
  NotInvolutive,
  ArityMismatch,
  UnknownSymbol,
  PortReuse,
  CellPortIsLoop,
  CellPortUnwired,
  NotTotal,
  NotInTarget,
  WiringNotPreserved,
  CellPortNotPreserved,
  CellNotPreserved,
  PrincipalNotPreserved,
  LabelNotPreserved,
  NotFreePort,
  SizeMismatch,
  Mismatch,
  SymbolMismatch,
  StaleRedex,
  NoRule,
  DuplicateRule,
  CutIsFixedPoint,
  CutNotBetweenAxioms,
  NotAlmostInjective,
  SyntaxError,
  DuplicateName,
  InvariantViolation,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::optional<Port> port = std::nullopt);

  ErrorKind kind() const { return kind_; }
  std::optional<Port> port() const { return port_; }

 private:
  ErrorKind kind_;
  std::optional<Port> port_;
};

// Raised by the text reader. kind() is the underlying cause, e.g. the
// invariant that a parsed net broke.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, int line, int column,
             bool invariant = false);

  int line() const { return line_; }
  int column() const { return column_; }
  // True when the text parsed but the resulting object is ill-formed.
  bool invariant_violation() const { return invariant_; }

 private:
  int line_;
  int column_;
  bool invariant_;
};

}  // namespace inet
