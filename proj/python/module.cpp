#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "helium/bench.hpp"
#include "helium/driver.hpp"
#include "helium/elaborate.hpp"
#include "helium/runtime.hpp"

namespace py = pybind11;

namespace {

helium::CompileOptions make_options(bool no_opt, int input_bits,
                                    const std::vector<std::string>& passes) {
  helium::CompileOptions opts;
  opts.no_opt = no_opt;
  opts.input_bits = input_bits;
  opts.pass_names = passes;
  return opts;
}

std::string compile_to_json(const std::string& source, bool no_opt, int input_bits,
                            const std::vector<std::string>& passes) {
  return helium::write_circuit(
      helium::compile_source(source, make_options(no_opt, input_bits, passes)).circuit);
}

std::string dump_heir(const std::string& source, bool no_opt, int input_bits,
                      const std::vector<std::string>& passes) {
  return helium::compile_source(source, make_options(no_opt, input_bits, passes)).graph.dump();
}

py::dict run_circuit(const std::string& circuit_json, const std::string& inputs_json,
                     const std::string& cost_json) {
  helium::Circuit circuit = helium::read_circuit(circuit_json);
  helium::InputBundle inputs = helium::input_bundle_from_json(inputs_json);
  helium::CostModel cost =
      cost_json.empty() ? helium::CostModel{} : helium::CostModel::from_json(cost_json);
  auto result = helium::evaluate(circuit, inputs, cost);
  py::dict outputs;
  for (const auto& [name, value] : result.outputs) outputs[py::str(name)] = value.payload;
  py::dict d;
  d["outputs"] = outputs;
  d["total_cost"] = result.total_cost;
  d["max_depth"] = result.max_depth;
  d["pre_count"] = result.counts.pre;
  return d;
}

py::dict oracle_run(const std::string& source, const std::string& inputs_json) {
  auto parsed = helium::parse_source(source);
  if (!parsed.errors.empty())
    throw helium::CompileError(helium::ErrorKind::Parse, parsed.errors.front().message);
  auto outputs =
      helium::oracle_evaluate(parsed.ast, helium::input_bundle_from_json(inputs_json));
  py::dict d;
  for (const auto& [name, value] : outputs) d[py::str(name)] = value;
  return d;
}

std::string format_source(const std::string& source) {
  auto parsed = helium::parse_source(source);
  if (!parsed.errors.empty())
    throw helium::CompileError(helium::ErrorKind::Parse, parsed.errors.front().message);
  return helium::pretty_print(parsed.ast);
}

}  // namespace

PYBIND11_MODULE(_helium, m) {
  m.doc() = "HEDSL compiler and mock-ciphertext runtime";

  py::register_exception<helium::CompileError>(m, "CompileError");

  m.def("compile", &compile_to_json, py::arg("source"), py::arg("no_opt") = false,
        py::arg("input_bits") = 1, py::arg("passes") = std::vector<std::string>{},
        "Compile HEDSL source to a circuit JSON string");
  m.def("dump_heir", &dump_heir, py::arg("source"), py::arg("no_opt") = false,
        py::arg("input_bits") = 1, py::arg("passes") = std::vector<std::string>{},
        "Compile HEDSL source and dump the term graph as text");
  m.def("run", &run_circuit, py::arg("circuit_json"), py::arg("inputs_json"),
        py::arg("cost_json") = std::string{},
        "Evaluate a circuit JSON against an input bundle; returns outputs and counters");
  m.def("oracle", &oracle_run, py::arg("source"), py::arg("inputs_json"),
        "Interpret HEDSL source directly, without compiling");
  m.def("format", &format_source, py::arg("source"), "Parse and pretty-print HEDSL source");
  m.def("tumor_source", &helium::tumor_source, py::arg("n"), py::arg("k"),
        py::arg("vec_len") = 1000, py::arg("shared_output_key") = false,
        "Generate the n-dataset / k-key tumor-recurrence benchmark program");
  m.def(
      "sweep",
      [](const std::vector<int>& n_list, const std::vector<int>& ratios, std::uint64_t seed,
         int vec_len) {
        return helium::bench_csv(
            helium::sweep_bench(n_list, ratios, helium::CostModel{}, seed, vec_len));
      },
      py::arg("n_list"), py::arg("ratios"), py::arg("seed") = 42, py::arg("vec_len") = 16,
      "PRE sweep over the benchmark family; returns a CSV string");
}
