#include "helium/driver.hpp"

#include "helium/elaborate.hpp"

namespace helium {

CompileArtifacts compile_source(const std::string& source, const CompileOptions& options) {
  ParseResult parsed = parse_source(source);
  if (!parsed.errors.empty()) {
    std::string joined;
    for (const auto& d : parsed.errors) {
      if (!joined.empty()) joined += "; ";
      joined += std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": " +
                d.message;
    }
    throw CompileError(ErrorKind::Parse, parsed.errors.front().span, joined);
  }

  CompileArtifacts art;
  art.graph = elaborate(parsed.ast);
  art.graph.verify();
  PipelineConfig config;
  config.no_opt = options.no_opt;
  config.pass_names = options.pass_names;
  art.reports = run_pipeline(art.graph, config);
  art.circuit = emit(art.graph, options.input_bits, art.reports);
  art.ast = std::move(parsed.ast);
  return art;
}

}  // namespace helium
