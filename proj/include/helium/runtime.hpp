#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "helium/ast.hpp"
#include "helium/circuit.hpp"
#include "helium/graph.hpp"

namespace helium {

// Mock-ciphertext value: plaintext payload tagged with the key label it is
// nominally encrypted under, plus accumulated ct-ct multiplicative depth.
struct LabeledValue {
  std::vector<std::int64_t> payload;  // scalars are length-1
  std::optional<KeyLabel> key;        // nullopt => plaintext
  int depth = 0;
};

// party -> { input name -> payload }
using InputBundle = std::map<std::string, std::map<std::string, std::vector<std::int64_t>>>;

struct OpCounts {
  std::int64_t add_cc = 0, add_cp = 0, sub_cc = 0, sub_cp = 0;
  std::int64_t mul_cc = 0, mul_cp = 0, rot = 0, pre = 0;
  std::int64_t constant = 0, load = 0, store = 0;

  std::int64_t total() const {
    return add_cc + add_cp + sub_cc + sub_cp + mul_cc + mul_cp + rot + pre +
           constant + load + store;
  }
};

struct CostModel {
  double add_cc = 1.0, add_cp = 0.5, sub_cc = 1.0, sub_cp = 0.5;
  double mul_cc = 10.0, mul_cp = 3.0, rot = 8.0, pre = 30.0;
  double constant = 0.0, load = 0.0, store = 0.0;

  double total(const OpCounts& c) const;
  static CostModel from_json(const std::string& json_text);
};

struct EvalResult {
  std::map<std::string, LabeledValue> outputs;
  OpCounts counts;
  double total_cost = 0.0;
  int max_depth = 0;
};

// Executes the instruction list in order. *_CC ops require equal operand
// keys (KeyMismatchError indicates a compiler bug); PRE relabels the key at
// zero depth charge; arithmetic is element-wise 64-bit signed with scalar
// broadcast and overflow as a hard error.
EvalResult evaluate(const Circuit& c, const InputBundle& inputs,
                    const CostModel& cost = {});

// Direct plaintext interpretation of the AST, ignoring keys entirely: the
// independent correctness reference for the compiled path.
std::map<std::string, std::vector<std::int64_t>> oracle_evaluate(
    const Ast& ast, const InputBundle& inputs);

// Plaintext evaluation of a computation graph at any pipeline stage (keys
// ignored); used to check semantics preservation pass by pass.
std::map<std::string, std::vector<std::int64_t>> graph_evaluate(
    const CompGraph& g, const InputBundle& inputs);

InputBundle input_bundle_from_json(const std::string& json_text);
std::string outputs_to_json(const std::map<std::string, LabeledValue>& outputs);

}  // namespace helium
