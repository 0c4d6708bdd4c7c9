#pragma once

#include <string>
#include <vector>

#include "helium/diagnostics.hpp"

namespace helium {

enum class TokKind {
  // keywords
  KwInput,
  KwOutput,
  KwVar,
  KwFun,
  KwFor,
  KwReturn,
  KwPlain,
  KwInt,
  // literals / names
  Ident,
  IntLit,
  // operators
  Plus,
  Minus,
  Star,
  StarStar,
  Shl,       // <<
  Shr,       // >>
  FromArrow, // <=
  ToArrow,   // =>
  Assign,    // =
  // punctuation
  Colon,
  Semi,
  Comma,
  At,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Eof,
};

enum class TokCategory { Keyword, Identifier, IntegerLiteral, Operator, Punctuation };

TokCategory token_category(TokKind kind);
const char* token_kind_name(TokKind kind);

struct Token {
  TokKind kind;
  std::string lexeme;
  Span span;
};

// Skips whitespace and `//` line comments. Throws CompileError(Lex) on any
// character outside the DSL alphabet. The returned stream ends with an Eof
// token whose span points one past the last byte.
std::vector<Token> tokenize(const std::string& source);

}  // namespace helium
