#pragma once

#include <string>
#include <vector>

#include "helium/circuit.hpp"
#include "helium/parser.hpp"
#include "helium/passes.hpp"

namespace helium {

struct CompileOptions {
  bool no_opt = false;
  std::vector<std::string> pass_names;  // empty => default pipeline
  int input_bits = 1;
};

struct CompileArtifacts {
  Ast ast;
  CompGraph graph;
  std::vector<PassReport> reports;
  Circuit circuit;
};

// Full frontend -> elaborator -> passes -> backend run.
// Throws CompileError; parse errors are raised as CompileError(Parse) with
// the first diagnostic's span and all messages joined.
CompileArtifacts compile_source(const std::string& source,
                                const CompileOptions& options = {});

}  // namespace helium
