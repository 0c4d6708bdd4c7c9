#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <sstream>

#include "helium/graph.hpp"

namespace helium {

const char* op_kind_name(OpKind kind) {
  switch (kind) {
    case OpKind::Input: return "input";
    case OpKind::Output: return "output";
    case OpKind::Const: return "const";
    case OpKind::Add: return "add";
    case OpKind::Sub: return "sub";
    case OpKind::Mul: return "mul";
    case OpKind::Pow: return "pow";
    case OpKind::RotL: return "rotl";
    case OpKind::RotR: return "rotr";
    case OpKind::Pre: return "pre";
  }
  return "?";
}

int op_arity(OpKind kind) {
  switch (kind) {
    case OpKind::Input:
    case OpKind::Const: return 0;
    case OpKind::Output:
    case OpKind::Pre: return 1;
    default: return 2;
  }
}

bool is_binary_op(OpKind kind) { return op_arity(kind) == 2; }

namespace {

BinOpKind to_binop(OpKind kind) {
  switch (kind) {
    case OpKind::Add: return BinOpKind::Add;
    case OpKind::Sub: return BinOpKind::Sub;
    case OpKind::Mul: return BinOpKind::Mul;
    case OpKind::Pow: return BinOpKind::Pow;
    case OpKind::RotL: return BinOpKind::RotL;
    default: return BinOpKind::RotR;
  }
}

void erase_one(std::vector<NodeId>& v, NodeId id) {
  auto it = std::find(v.begin(), v.end(), id);
  if (it != v.end()) v.erase(it);
}

}  // namespace

NodeId CompGraph::fresh(GraphNode node) {
  node.id = next_id_++;
  for (NodeId op : node.operands) {
    if (!contains(op))
      throw CompileError(ErrorKind::Arity,
                         "operand %" + std::to_string(op) + " does not exist");
    nodes_.at(op).uses.push_back(node.id);
  }
  NodeId id = node.id;
  nodes_.emplace(id, std::move(node));
  return id;
}

NodeId CompGraph::add_input(const std::string& name, const PartyId& party,
                            std::optional<KeyLabel> key, ValueType vtype) {
  GraphNode n;
  n.kind = OpKind::Input;
  n.name = name;
  n.party = party;
  n.key = std::move(key);
  n.vtype = vtype;
  NodeId id = fresh(std::move(n));
  inputs_.push_back(id);
  return id;
}

NodeId CompGraph::add_output(const std::string& name, const PartyId& party,
                             const KeyLabel& key, NodeId operand) {
  GraphNode n;
  n.kind = OpKind::Output;
  n.name = name;
  n.party = party;
  n.key = key;
  n.operands = {operand};
  n.vtype = node(operand).vtype;
  NodeId id = fresh(std::move(n));
  outputs_.push_back(id);
  return id;
}

NodeId CompGraph::add_const(std::int64_t v) {
  return add_const_vector({v}, ValueType::scalar(Secrecy::Const));
}

NodeId CompGraph::add_const_vector(const std::vector<std::int64_t>& v, ValueType vtype) {
  if (static_cast<std::int64_t>(v.size()) != vtype.len())
    throw CompileError(ErrorKind::Type, "const payload length does not match its type");
  GraphNode n;
  n.kind = OpKind::Const;
  n.value = v;
  n.vtype = vtype;
  n.vtype.secrecy = Secrecy::Const;
  return fresh(std::move(n));
}

NodeId CompGraph::add_op(OpKind kind, NodeId lhs, NodeId rhs) {
  if (!is_binary_op(kind))
    throw CompileError(ErrorKind::Arity, std::string(op_kind_name(kind)) + " is not binary");
  GraphNode n;
  n.kind = kind;
  n.operands = {lhs, rhs};
  if (!contains(lhs) || !contains(rhs))
    throw CompileError(ErrorKind::Arity, "operand does not exist");
  if ((kind == OpKind::RotL || kind == OpKind::RotR || kind == OpKind::Pow) &&
      node(rhs).kind != OpKind::Const)
    throw CompileError(ErrorKind::Type,
                       std::string(op_kind_name(kind)) + " second operand must be a const node");
  n.vtype = promote(node(lhs).vtype, node(rhs).vtype, to_binop(kind));
  return fresh(std::move(n));
}

NodeId CompGraph::add_pre(NodeId operand, const KeyLabel& target) {
  GraphNode n;
  n.kind = OpKind::Pre;
  n.operands = {operand};
  n.vtype = node(operand).vtype;
  n.key = target;
  n.target_key = target;
  return fresh(std::move(n));
}

void CompGraph::replace_uses(NodeId old_id, NodeId new_id) {
  if (old_id == new_id) return;
  GraphNode& old_node = node(old_id);
  GraphNode& new_node = node(new_id);
  if (old_node.vtype.len() != new_node.vtype.len())
    throw CompileError(ErrorKind::Type, "replacement changes value shape");
  std::vector<NodeId> users = old_node.uses;
  for (NodeId user : users) {
    for (NodeId& slot : node(user).operands)
      if (slot == old_id) slot = new_id;
    new_node.uses.push_back(user);
  }
  old_node.uses.clear();
  std::sort(new_node.uses.begin(), new_node.uses.end());
}

void CompGraph::rewrite_operand(NodeId user, NodeId old_operand, NodeId new_operand) {
  GraphNode& u = node(user);
  bool hit = false;
  for (NodeId& slot : u.operands) {
    if (slot == old_operand) {
      slot = new_operand;
      erase_one(node(old_operand).uses, user);
      node(new_operand).uses.push_back(user);
      hit = true;
    }
  }
  if (!hit)
    throw CompileError(ErrorKind::Verify, "rewrite_operand: edge not found");
}

void CompGraph::remove_node(NodeId id) {
  GraphNode& n = node(id);
  if (!n.uses.empty())
    throw CompileError(ErrorKind::Verify, "cannot remove a node that still has uses");
  if (n.kind == OpKind::Input || n.kind == OpKind::Output)
    throw CompileError(ErrorKind::Verify, "cannot remove an interface node");
  for (NodeId op : n.operands) erase_one(node(op).uses, id);
  nodes_.erase(id);
}

std::vector<NodeId> CompGraph::drains() const {
  std::vector<NodeId> out;
  for (const auto& [id, n] : nodes_)
    if (n.uses.empty()) out.push_back(id);
  return out;  // map iteration is already ascending
}

std::vector<NodeId> CompGraph::topo_order() const {
  std::map<NodeId, int> pending;  // unprocessed operand count
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (const auto& [id, n] : nodes_) {
    pending[id] = static_cast<int>(n.operands.size());
    if (n.operands.empty()) ready.push(id);
  }
  std::vector<NodeId> order;
  order.reserve(nodes_.size());
  while (!ready.empty()) {
    NodeId id = ready.top();
    ready.pop();
    order.push_back(id);
    const GraphNode& n = nodes_.at(id);
    // uses is a multiset; each edge decrements once
    for (NodeId user : n.uses)
      if (--pending[user] == 0) ready.push(user);
  }
  if (order.size() != nodes_.size())
    throw CompileError(ErrorKind::Cycle, "cycle detected in computation graph");
  return order;
}

namespace {

int pow_depth(std::int64_t exponent) {
  if (exponent < 2) return 0;
  return static_cast<int>(std::ceil(std::log2(static_cast<double>(exponent))));
}

}  // namespace

int CompGraph::multiplicative_depth() const {
  std::map<NodeId, int> depth;
  int best = 0;
  for (NodeId id : topo_order()) {
    const GraphNode& n = nodes_.at(id);
    int d = 0;
    for (NodeId op : n.operands) d = std::max(d, depth[op]);
    bool ct_ct = is_binary_op(n.kind) &&
                 nodes_.at(n.operands[0]).vtype.secrecy == Secrecy::Cipher &&
                 nodes_.at(n.operands[1]).vtype.secrecy == Secrecy::Cipher;
    if (n.kind == OpKind::Mul && ct_ct) d += 1;
    if (n.kind == OpKind::Pow && nodes_.at(n.operands[0]).vtype.secrecy == Secrecy::Cipher)
      d += pow_depth(nodes_.at(n.operands[1]).value.at(0));
    depth[id] = d;
    best = std::max(best, d);
  }
  return best;
}

int CompGraph::op_depth(OpKind kind) const {
  std::map<NodeId, int> depth;
  int best = 0;
  for (NodeId id : topo_order()) {
    const GraphNode& n = nodes_.at(id);
    int d = 0;
    for (NodeId op : n.operands) d = std::max(d, depth[op]);
    if (n.kind == kind) d += 1;
    depth[id] = d;
    best = std::max(best, d);
  }
  return best;
}

void CompGraph::verify() const {
  for (const auto& [id, n] : nodes_) {
    if (n.id != id) throw CompileError(ErrorKind::Verify, "node id mismatch");
    if (static_cast<int>(n.operands.size()) != op_arity(n.kind))
      throw CompileError(ErrorKind::Verify,
                         std::string("arity violation on ") + op_kind_name(n.kind));
    for (NodeId op : n.operands) {
      if (!contains(op))
        throw CompileError(ErrorKind::Verify, "dangling operand reference");
      const auto& ops = n.operands;
      const auto& uses = nodes_.at(op).uses;
      auto in_ops = std::count(ops.begin(), ops.end(), op);
      auto in_uses = std::count(uses.begin(), uses.end(), id);
      if (in_ops != in_uses)
        throw CompileError(ErrorKind::Verify, "use-def inconsistency at %" + std::to_string(id));
    }
    for (NodeId user : n.uses)
      if (!contains(user))
        throw CompileError(ErrorKind::Verify, "dangling use reference");
    if ((n.kind == OpKind::RotL || n.kind == OpKind::RotR || n.kind == OpKind::Pow) &&
        nodes_.at(n.operands[1]).kind != OpKind::Const)
      throw CompileError(ErrorKind::Verify, "rotation/pow second operand must be const");
    if (n.kind == OpKind::Output && !n.uses.empty())
      throw CompileError(ErrorKind::Verify, "output node must be a drain");
    if (n.kind == OpKind::Const &&
        static_cast<std::int64_t>(n.value.size()) != n.vtype.len())
      throw CompileError(ErrorKind::Verify, "const payload/type length mismatch");
  }
  for (NodeId id : inputs_)
    if (!contains(id) || nodes_.at(id).kind != OpKind::Input)
      throw CompileError(ErrorKind::Verify, "inputs list is not kind-consistent");
  for (NodeId id : outputs_)
    if (!contains(id) || nodes_.at(id).kind != OpKind::Output)
      throw CompileError(ErrorKind::Verify, "outputs list is not kind-consistent");
  topo_order();  // throws on cycles
}

std::string CompGraph::dump() const {
  std::ostringstream os;
  for (NodeId id : topo_order()) {
    const GraphNode& n = nodes_.at(id);
    os << "%" << id << " = " << op_kind_name(n.kind) << "(" << to_string(n.vtype);
    if (n.key) os << ", key=" << *n.key;
    os << ")";
    for (NodeId op : n.operands) os << " %" << op;
    if (n.kind == OpKind::Input || n.kind == OpKind::Output)
      os << " \"" << n.name << "\" <" << n.party << ">";
    if (n.kind == OpKind::Const) {
      os << " [";
      for (std::size_t i = 0; i < n.value.size(); ++i) {
        if (i) os << ",";
        os << n.value[i];
      }
      os << "]";
    }
    os << "\n";
  }
  return os.str();
}

const GraphNode& CompGraph::node(NodeId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end())
    throw CompileError(ErrorKind::Verify, "unknown node %" + std::to_string(id));
  return it->second;
}

GraphNode& CompGraph::node(NodeId id) {
  return const_cast<GraphNode&>(static_cast<const CompGraph*>(this)->node(id));
}

}  // namespace helium
