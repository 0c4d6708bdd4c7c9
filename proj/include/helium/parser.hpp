#pragma once

#include <vector>

#include "helium/ast.hpp"
#include "helium/token.hpp"

namespace helium {

struct ParseResult {
  Ast ast;
  std::vector<Diagnostic> errors;  // empty iff the parse succeeded
};

// Recovers to the next `;` after an error so multiple errors can surface.
ParseResult parse(const std::vector<Token>& tokens);

// Convenience: tokenize + parse. Lex errors are reported as diagnostics.
ParseResult parse_source(const std::string& source);

}  // namespace helium
