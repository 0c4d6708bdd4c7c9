#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "helium/bench.hpp"
#include "helium/driver.hpp"
#include "helium/elaborate.hpp"
#include "helium/runtime.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw helium::CompileError(helium::ErrorKind::Config, "file not found: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw helium::CompileError(helium::ErrorKind::Config, "cannot write " + path);
  out << text;
}

bool color_enabled() {
  const char* env = std::getenv("HELIUM_COLOR");
  return env == nullptr || std::string(env) != "0";
}

void print_error(const std::string& prefix, const std::string& message) {
  if (color_enabled())
    std::cerr << "\033[1;31m" << prefix << "\033[0m " << message << "\n";
  else
    std::cerr << prefix << " " << message << "\n";
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

void print_reports(const std::vector<helium::PassReport>& reports) {
  std::cerr << "pass        removed  added  pre  warnings\n";
  for (const auto& r : reports) {
    std::cerr << r.pass;
    for (std::size_t i = r.pass.size(); i < 12; ++i) std::cerr << ' ';
    std::cerr << r.nodes_removed << "        " << r.nodes_added << "      " << r.pre_inserted
              << "    " << r.warnings.size() << "\n";
    for (const auto& w : r.warnings) std::cerr << "  warning: " << w << "\n";
  }
}

int run_compile(const std::string& file, const std::string& out_path, const std::string& emit_stage,
                bool no_opt, const std::string& passes_csv, int input_bits) {
  std::string source = read_file(file);

  if (emit_stage == "ast") {
    auto parsed = helium::parse_source(source);
    if (!parsed.errors.empty()) {
      for (const auto& d : parsed.errors) print_error(helium::format_diagnostic(file, d), "");
      return 1;
    }
    std::cout << helium::pretty_print(parsed.ast);
    return 0;
  }

  helium::CompileOptions options;
  options.no_opt = no_opt;
  options.input_bits = input_bits;
  if (!passes_csv.empty()) {
    std::stringstream ss(passes_csv);
    std::string name;
    while (std::getline(ss, name, ',')) options.pass_names.push_back(name);
  }

  auto art = helium::compile_source(source, options);
  print_reports(art.reports);
  if (emit_stage == "heir") {
    std::cout << art.graph.dump();
    return 0;
  }
  std::string text = helium::write_circuit(art.circuit);
  if (out_path.empty() || emit_stage == "circuit")
    std::cout << text;
  else
    write_file(out_path, text);
  return 0;
}

int run_run(const std::string& circuit_path, const std::string& inputs_path,
            const std::string& cost_path, bool show_counts) {
  helium::Circuit circuit = helium::read_circuit(read_file(circuit_path));
  helium::InputBundle inputs = helium::input_bundle_from_json(read_file(inputs_path));
  helium::CostModel cost;
  if (!cost_path.empty()) cost = helium::CostModel::from_json(read_file(cost_path));
  auto result = helium::evaluate(circuit, inputs, cost);
  std::cout << helium::outputs_to_json(result.outputs);
  if (show_counts) {
    const auto& c = result.counts;
    std::cout << "counts: add_cc=" << c.add_cc << " add_cp=" << c.add_cp
              << " sub_cc=" << c.sub_cc << " sub_cp=" << c.sub_cp << " mul_cc=" << c.mul_cc
              << " mul_cp=" << c.mul_cp << " rot=" << c.rot << " pre=" << c.pre
              << " const=" << c.constant << " load=" << c.load << " store=" << c.store
              << "\n";
    std::cout << "total_cost: " << result.total_cost << "\n";
    std::cout << "max_depth: " << result.max_depth << "\n";
  }
  return 0;
}

int run_stats(const std::string& circuit_path) {
  helium::Circuit c = helium::read_circuit(read_file(circuit_path));
  auto ki = helium::key_interface(c);
  std::cout << "instructions: " << c.instructions.size() << "\n";
  std::cout << "mult_depth: " << c.metrics.mult_depth << "\n";
  std::cout << "pre_count: " << c.metrics.pre_count << "\n";
  std::cout << "max_plain_bits: " << c.metrics.max_plain_bits << "\n";
  std::cout << "node_count: " << c.metrics.node_count << "\n";
  std::cout << "plain_modulus_bits: " << c.suggested_params.plain_modulus_bits << "\n";
  std::cout << "depth_budget: " << c.suggested_params.depth_budget << "\n";
  auto print_set = [](const char* name, const std::set<helium::KeyLabel>& s) {
    std::cout << name << ": {";
    bool first = true;
    for (const auto& k : s) {
      if (!first) std::cout << ", ";
      std::cout << k;
      first = false;
    }
    std::cout << "}\n";
  };
  print_set("K_I", ki.k_in);
  print_set("K_O", ki.k_out);
  std::cout << "p_min: " << ki.p_min << "\n";
  std::cout << "p_naive: " << ki.p_naive << "\n";
  std::cout << "rekeys:";
  for (const auto& [from, to] : ki.required_rekeys) std::cout << " " << from << "->" << to;
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"helium: HEDSL compiler and mock-ciphertext runtime"};
  app.require_subcommand(1);

  auto* compile = app.add_subcommand("compile", "Compile a .he source file to a circuit");
  std::string file, out_path, emit_stage, passes_csv;
  bool no_opt = false;
  int input_bits = 1;
  compile->add_option("file", file, "HEDSL source file")->required();
  compile->add_option("-o,--output", out_path, "circuit output path (default: stdout)");
  compile->add_option("--emit", emit_stage, "dump stage: ast | heir | circuit")
      ->check(CLI::IsMember({"ast", "heir", "circuit"}));
  compile->add_flag("--no-opt", no_opt, "naive PRE placement, no optimization passes");
  compile->add_option("--passes", passes_csv, "comma list: fold,dce,rebalance,pre");
  compile->add_option("--input-bits", input_bits, "assumed input bit width (default 1)");

  auto* run = app.add_subcommand("run", "Evaluate a compiled circuit");
  std::string circuit_path, inputs_path, cost_path;
  bool show_counts = false;
  run->add_option("circuit", circuit_path, "circuit JSON file")->required();
  run->add_option("--inputs", inputs_path, "input bundle JSON (party -> {name: value})")
      ->required();
  run->add_option("--cost", cost_path, "cost model JSON");
  run->add_flag("--counts", show_counts, "print operation counts and total cost");

  auto* stats = app.add_subcommand("stats", "Print circuit metrics and key interface");
  std::string stats_path;
  stats->add_option("circuit", stats_path, "circuit JSON file")->required();

  auto* bench = app.add_subcommand("bench", "PRE sweep over the tumor-recurrence family");
  std::string n_csv = "128,256,512,768,1024", ratio_csv = "1,2,4,8";
  std::string bench_cost_path;
  std::uint64_t seed = 42;
  int vec_len = 16;
  bench->add_option("--n", n_csv, "comma list of dataset counts")->required();
  bench->add_option("--ratio", ratio_csv, "comma list of n/k ratios")->required();
  bench->add_option("--cost", bench_cost_path, "cost model JSON");
  bench->add_option("--seed", seed, "input generator seed");
  bench->add_option("--vec-len", vec_len, "mutation vector length (default 16)");

  try {
    app.parse(argc, argv);
    if (*compile)
      return run_compile(file, out_path, emit_stage, no_opt, passes_csv, input_bits);
    if (*run) return run_run(circuit_path, inputs_path, cost_path, show_counts);
    if (*stats) return run_stats(stats_path);
    helium::CostModel cost;
    if (!bench_cost_path.empty())
      cost = helium::CostModel::from_json(read_file(bench_cost_path));
    std::cout << helium::bench_csv(helium::sweep_bench(parse_int_list(n_csv),
                                                       parse_int_list(ratio_csv), cost, seed,
                                                       vec_len));
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const helium::CompileError& e) {
    if (*compile && e.span().length > 0)
      print_error(helium::format_diagnostic(file, {e.span(), e.what()}), "");
    else
      print_error(std::string(helium::error_kind_name(e.kind())) + " error:", e.what());
    switch (e.kind()) {
      case helium::ErrorKind::Cycle:
      case helium::ErrorKind::KeyMismatch:
      case helium::ErrorKind::Verify:
        return 2;  // internal invariant violation
      default:
        return 1;  // user error
    }
  }
}
