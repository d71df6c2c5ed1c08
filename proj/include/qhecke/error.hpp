#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhecke {

enum class ErrorKind {
  InvalidArgument,
  ZeroSeries,
  NonConvergent,
  PoleAtTerm,
  DegenerateZ,
  DegenerateDenominator,
  UnsupportedShape,
  PairingFailure,
  ParseError,
  UnknownIdentity,
  InsufficientOrder,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the engine carries a kind so that reports can name
// it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace qhecke
