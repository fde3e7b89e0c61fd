#pragma once

#include <stdexcept>
#include <string>

namespace twc {

/// Coarse classification used by the command line front end to pick an exit code.
enum class ErrorKind { Input, Math, Unresolved };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& message)
      : std::runtime_error(message), kind_(kind), name_(std::move(name)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

#define TWC_DEFINE_ERROR(Type, Kind)                                    \
  class Type : public Error {                                           \
   public:                                                              \
    explicit Type(const std::string& message)                           \
        : Error(ErrorKind::Kind, #Type, message) {}                     \
  };

TWC_DEFINE_ERROR(InvalidInput, Input)
TWC_DEFINE_ERROR(ZeroDivisorDetected, Math)
TWC_DEFINE_ERROR(OrderUndetermined, Math)
TWC_DEFINE_ERROR(PrecisionExhausted, Math)
TWC_DEFINE_ERROR(NeedsExtension, Math)
TWC_DEFINE_ERROR(AmbiguousBranch, Math)
TWC_DEFINE_ERROR(NoRelation, Math)
TWC_DEFINE_ERROR(NonUniqueRelation, Math)
TWC_DEFINE_ERROR(WrongPoleOrders, Math)
TWC_DEFINE_ERROR(GcdNotOne, Math)
TWC_DEFINE_ERROR(NotPolynomial, Math)
TWC_DEFINE_ERROR(BoundExhausted, Math)
TWC_DEFINE_ERROR(MismatchedCertificates, Math)
TWC_DEFINE_ERROR(InfiniteFamily, Math)
TWC_DEFINE_ERROR(Unresolved, Unresolved)

#undef TWC_DEFINE_ERROR

/// Syntax errors carry a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(ErrorKind::Input, "ParseError",
              std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace twc
