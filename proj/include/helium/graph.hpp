#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "helium/diagnostics.hpp"
#include "helium/types.hpp"

namespace helium {

using NodeId = std::int64_t;

enum class OpKind { Input, Output, Const, Add, Sub, Mul, Pow, RotL, RotR, Pre };

const char* op_kind_name(OpKind kind);
int op_arity(OpKind kind);
bool is_binary_op(OpKind kind);

struct GraphNode {
  NodeId id = -1;
  OpKind kind = OpKind::Const;
  std::vector<NodeId> operands;
  std::vector<NodeId> uses;  // multiset, the exact inverse of operands
  ValueType vtype;
  std::optional<KeyLabel> key;  // Cipher nodes only; set by inputs / PRE pass

  // kind-specific payloads
  std::string name;                 // Input / Output
  PartyId party;                    // Input / Output
  std::vector<std::int64_t> value;  // Const (length == vtype.len())
  KeyLabel target_key;              // Pre
};

// The HEIR term graph: a DAG with explicit use-def edges. Node ids are never
// reused within a compilation; removal is physical but ids stay stable.
class CompGraph {
 public:
  NodeId add_input(const std::string& name, const PartyId& party,
                   std::optional<KeyLabel> key, ValueType vtype);
  NodeId add_output(const std::string& name, const PartyId& party,
                    const KeyLabel& key, NodeId operand);
  NodeId add_const(std::int64_t v);
  NodeId add_const_vector(const std::vector<std::int64_t>& v, ValueType vtype);
  // Binary arithmetic node; vtype computed via promote().
  NodeId add_op(OpKind kind, NodeId lhs, NodeId rhs);
  NodeId add_pre(NodeId operand, const KeyLabel& target);

  // Every operand slot referencing `old_id` is rewritten to `new_id`;
  // use counts move with it and `old_id` becomes a drain.
  void replace_uses(NodeId old_id, NodeId new_id);

  // Rewrites exactly the operand slots of `user` that reference `old_operand`.
  void rewrite_operand(NodeId user, NodeId old_operand, NodeId new_operand);

  // Disconnects a node from its operands and erases it. The node must be a
  // drain (zero uses) and not an Input/Output.
  void remove_node(NodeId id);

  // Nodes with zero uses, ascending id.
  std::vector<NodeId> drains() const;

  // Deterministic: operands precede users, ties broken by ascending id.
  // Throws CompileError(Cycle) if the graph is corrupted.
  std::vector<NodeId> topo_order() const;

  // Maximum number of ct-ct multiplications on any path. Ciphertext-plaintext
  // multiplications count zero; a ct-ct Pow with Const exponent e counts
  // ceil(log2 e) (its repeated-squaring expansion).
  int multiplicative_depth() const;

  // Longest path counting only nodes of `kind` with at least one Cipher
  // operand chain; used for depth assertions on addition regions.
  int op_depth(OpKind kind) const;

  // Full invariant audit; throws CompileError(Verify) on the first violation.
  void verify() const;

  // `%id = kind(vtype, key?) operands...`, one line per node in topo order.
  std::string dump() const;

  const GraphNode& node(NodeId id) const;
  GraphNode& node(NodeId id);
  bool contains(NodeId id) const { return nodes_.count(id) != 0; }

  const std::map<NodeId, GraphNode>& nodes() const { return nodes_; }
  const std::vector<NodeId>& inputs() const { return inputs_; }
  const std::vector<NodeId>& outputs() const { return outputs_; }
  std::size_t size() const { return nodes_.size(); }

 private:
  NodeId fresh(GraphNode node);

  std::map<NodeId, GraphNode> nodes_;
  std::vector<NodeId> inputs_;
  std::vector<NodeId> outputs_;
  NodeId next_id_ = 0;
};

}  // namespace helium
