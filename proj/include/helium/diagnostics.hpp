#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace helium {

struct Span {
  int line = 1;
  int column = 1;
  std::size_t offset = 0;
  std::size_t length = 0;
};

enum class ErrorKind {
  Lex,
  Parse,
  Name,
  Type,
  Arity,
  LoopBound,
  Recursion,
  Overflow,
  Cycle,
  KeyResolution,
  KeyMismatch,
  Verify,
  MissingInput,
  Config,
};

const char* error_kind_name(ErrorKind kind);

// Thrown for any error after the parse stage. The frontend collects parse
// diagnostics instead, so several syntax errors can surface in one run.
class CompileError : public std::runtime_error {
 public:
  CompileError(ErrorKind kind, Span span, const std::string& message)
      : std::runtime_error(message), kind_(kind), span_(span) {}
  CompileError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  const Span& span() const { return span_; }

 private:
  ErrorKind kind_;
  Span span_{};
};

struct Diagnostic {
  Span span;
  std::string message;
};

// "file:line:col: error: message"
std::string format_diagnostic(const std::string& file, const Diagnostic& d);

}  // namespace helium
