#pragma once

#include "helium/ast.hpp"
#include "helium/graph.hpp"

namespace helium {

// Lowers the AST to the computation graph: scope resolution, function
// inlining with per-signature specialization, static loop unrolling,
// intrinsic evaluation (size), pow lowering by repeated squaring, and
// key/party label attachment with defaults:
//   omitted input party  -> Party_<input-name>
//   omitted input key    -> Key_<party>
//   omitted output party -> Party_Out, omitted output key -> Key_Out
// No FuncDecl, ForStmt, or Call survives elaboration.
CompGraph elaborate(const Ast& ast);

}  // namespace helium
