#pragma once

#include <string>
#include <vector>

#include "helium/graph.hpp"

namespace helium {

struct PassReport {
  std::string pass;
  int nodes_removed = 0;
  int nodes_added = 0;
  int pre_inserted = 0;
  std::vector<std::string> warnings;
};

// Replaces every op node whose operands are all Const with the evaluated
// Const, in one topo-order sweep; vector ops fold element-wise with scalar
// broadcast. Overflow past 64-bit signed range is a hard error.
PassReport constant_fold(CompGraph& g);

// Iterative drain removal. Input drains are kept but reported as
// "input <name> unused" warnings.
PassReport dead_code_eliminate(CompGraph& g);

// Merges single-use chains of the same commutative op (Add/Mul) into
// transient super nodes, then lowers each super node key-aware: operands are
// grouped by ciphertext key label (plain/const operands form one group),
// every group becomes a balanced binary tree, and the group roots combine in
// a balanced tree. Must run before PRE insertion.
PassReport rebalance(CompGraph& g);

// Key-label propagation and PRE placement. Forward traversal in topo order:
// a node whose ciphertext operands agree on one key inherits it; a mixing
// node takes the key of the output it reaches (lexicographically smallest if
// several) and gets a Pre on each ciphertext operand under a different key
// (identity re-encryptions are skipped). Outputs whose operand key differs
// from the declared key get one Pre. With naive=true every ciphertext input
// is re-encrypted immediately instead.
PassReport insert_pre(CompGraph& g, bool naive = false);

struct PipelineConfig {
  bool no_opt = false;                   // naive PRE placement only
  std::vector<std::string> pass_names;   // empty => default order
};

// Default order: fold, dce, rebalance, pre, dce; the graph is verified after
// every pass.
std::vector<PassReport> run_pipeline(CompGraph& g, const PipelineConfig& config = {});

}  // namespace helium
