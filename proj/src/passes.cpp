#include <algorithm>
#include <map>
#include <set>

#include "helium/passes.hpp"

namespace helium {

namespace {

std::vector<std::int64_t> fold_op(const GraphNode& n, const std::vector<std::int64_t>& lhs,
                                  const std::vector<std::int64_t>& rhs) {
  std::size_t len = static_cast<std::size_t>(n.vtype.len());
  std::vector<std::int64_t> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    std::int64_t a = lhs[lhs.size() == 1 ? 0 : i];
    std::int64_t b = rhs[rhs.size() == 1 ? 0 : i];
    std::int64_t r = 0;
    bool ovf = false;
    switch (n.kind) {
      case OpKind::Add: ovf = __builtin_add_overflow(a, b, &r); break;
      case OpKind::Sub: ovf = __builtin_sub_overflow(a, b, &r); break;
      case OpKind::Mul: ovf = __builtin_mul_overflow(a, b, &r); break;
      case OpKind::Pow: {
        if (b < 0) throw CompileError(ErrorKind::Type, "exponent must be non-negative");
        r = 1;
        for (std::int64_t e = 0; e < b && !ovf; ++e) ovf = __builtin_mul_overflow(r, a, &r);
        break;
      }
      case OpKind::RotL: {
        std::int64_t len = static_cast<std::int64_t>(lhs.size());
        r = lhs[(i + ((b % len) + len) % len) % len];
        break;
      }
      case OpKind::RotR: {
        std::int64_t len = static_cast<std::int64_t>(lhs.size());
        r = lhs[(i + len - ((b % len) + len) % len) % len];
        break;
      }
      default:
        throw CompileError(ErrorKind::Verify, "fold_op on non-arithmetic node");
    }
    if (ovf)
      throw CompileError(ErrorKind::Overflow, "constant folding overflows 64-bit signed range");
    out[i] = r;
  }
  return out;
}

}  // namespace

PassReport constant_fold(CompGraph& g) {
  PassReport report{.pass = "fold"};
  // A single topo sweep reaches the fixpoint: replacements are Const, so
  // downstream nodes observe them within the same pass.
  for (NodeId id : g.topo_order()) {
    if (!g.contains(id)) continue;
    const GraphNode& n = g.node(id);
    if (!is_binary_op(n.kind)) continue;
    bool all_const = true;
    for (NodeId op : n.operands)
      all_const = all_const && g.node(op).kind == OpKind::Const;
    if (!all_const) continue;
    auto value = fold_op(n, g.node(n.operands[0]).value, g.node(n.operands[1]).value);
    NodeId folded = g.add_const_vector(value, ValueType{n.vtype.vec_len, Secrecy::Const});
    g.replace_uses(id, folded);
    g.remove_node(id);
    report.nodes_added += 1;
    report.nodes_removed += 1;
  }
  return report;
}

PassReport dead_code_eliminate(CompGraph& g) {
  PassReport report{.pass = "dce"};
  std::vector<NodeId> worklist = g.drains();
  std::set<NodeId> warned;
  while (!worklist.empty()) {
    NodeId id = worklist.back();
    worklist.pop_back();
    if (!g.contains(id) || !g.node(id).uses.empty()) continue;
    const GraphNode& n = g.node(id);
    if (n.kind == OpKind::Output) continue;
    if (n.kind == OpKind::Input) {
      if (warned.insert(id).second)
        report.warnings.push_back("input " + n.name + " unused");
      continue;
    }
    std::vector<NodeId> operands = n.operands;
    g.remove_node(id);
    report.nodes_removed += 1;
    for (NodeId op : operands)
      if (g.node(op).uses.empty()) worklist.push_back(op);
  }
  return report;
}

namespace {

// Tentative key of a node before the PRE pass, used to group super-node
// operands: uniform-key subtrees balance among themselves so that one PRE
// per key group suffices at the joins.
struct KeyHint {
  enum Tag { None, Key, Mixed } tag = None;
  KeyLabel key;
};

// Memoized so that nodes created mid-pass get a hint too.
class KeyHints {
 public:
  explicit KeyHints(const CompGraph& g) : g_(g) {}

  const KeyHint& of(NodeId id) {
    auto it = memo_.find(id);
    if (it != memo_.end()) return it->second;
    const GraphNode& n = g_.node(id);
    KeyHint h;
    if (n.vtype.secrecy == Secrecy::Cipher) {
      if (n.kind == OpKind::Input) {
        h = {KeyHint::Key, n.key.value_or("")};
      } else {
        std::set<KeyLabel> keys;
        bool mixed = false;
        for (NodeId op : n.operands) {
          const KeyHint& oh = of(op);
          if (oh.tag == KeyHint::Mixed) mixed = true;
          if (oh.tag == KeyHint::Key) keys.insert(oh.key);
        }
        if (mixed || keys.size() > 1)
          h.tag = KeyHint::Mixed;
        else if (keys.size() == 1)
          h = {KeyHint::Key, *keys.begin()};
      }
    }
    return memo_.emplace(id, std::move(h)).first->second;
  }

 private:
  const CompGraph& g_;
  std::map<NodeId, KeyHint> memo_;
};

void collect_chain(const CompGraph& g, NodeId id, OpKind kind,
                   std::vector<NodeId>& operands, std::vector<NodeId>& merged) {
  for (NodeId op : g.node(id).operands) {
    const GraphNode& o = g.node(op);
    if (o.kind == kind && o.uses.size() == 1) {
      merged.push_back(op);
      collect_chain(g, op, kind, operands, merged);
    } else {
      operands.push_back(op);
    }
  }
}

NodeId balanced_tree(CompGraph& g, OpKind kind, std::vector<NodeId> level, int& added) {
  while (level.size() > 1) {
    std::vector<NodeId> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      next.push_back(g.add_op(kind, level[i], level[i + 1]));
      ++added;
    }
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

}  // namespace

PassReport rebalance(CompGraph& g) {
  PassReport report{.pass = "rebalance"};
  for (const auto& [id, n] : g.nodes())
    if (n.kind == OpKind::Pre)
      throw CompileError(ErrorKind::Verify, "rebalance must run before PRE insertion");

  KeyHints hints(g);
  std::vector<NodeId> order = g.topo_order();
  for (NodeId id : order) {
    if (!g.contains(id)) continue;
    const GraphNode& n = g.node(id);
    if (n.kind != OpKind::Add && n.kind != OpKind::Mul) continue;
    // Chain roots only: interior nodes have a single use of the same kind.
    if (n.uses.size() == 1 && g.node(n.uses[0]).kind == n.kind) continue;

    std::vector<NodeId> operands;
    std::vector<NodeId> merged;  // the transient super node's constituents
    collect_chain(g, id, n.kind, operands, merged);
    if (operands.size() <= 2) continue;

    // Partition by key label; plain/const operands form one group, operands
    // already mixing keys a second.
    std::map<std::string, std::vector<NodeId>> groups;
    for (NodeId op : operands) {
      const KeyHint& h = hints.of(op);
      std::string bucket = h.tag == KeyHint::Key     ? "k:" + h.key
                           : h.tag == KeyHint::Mixed ? "\x02mixed"
                                                     : "\x01plain";
      groups[bucket].push_back(op);
    }
    OpKind kind = n.kind;
    std::vector<NodeId> roots;
    for (auto& [bucket, members] : groups)
      roots.push_back(balanced_tree(g, kind, std::move(members), report.nodes_added));
    NodeId tree = balanced_tree(g, kind, std::move(roots), report.nodes_added);

    g.replace_uses(id, tree);
    // The merged chain is now dead; drop it so later passes never see it.
    std::vector<NodeId> dead = {id};
    dead.insert(dead.end(), merged.begin(), merged.end());
    bool progress = true;
    while (progress) {
      progress = false;
      for (auto it = dead.begin(); it != dead.end();) {
        if (g.contains(*it) && g.node(*it).uses.empty()) {
          g.remove_node(*it);
          report.nodes_removed += 1;
          it = dead.erase(it);
          progress = true;
        } else {
          ++it;
        }
      }
    }
  }
  return report;
}

namespace {

// Output keys reachable from each node, for mixing-node target resolution.
std::map<NodeId, std::set<KeyLabel>> reachable_output_keys(const CompGraph& g) {
  std::map<NodeId, std::set<KeyLabel>> out;
  std::vector<NodeId> order = g.topo_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const GraphNode& n = g.node(*it);
    if (n.kind == OpKind::Output) {
      out[*it] = {*n.key};
      continue;
    }
    std::set<KeyLabel>& mine = out[*it];
    for (NodeId user : n.uses) {
      const auto& theirs = out[user];
      mine.insert(theirs.begin(), theirs.end());
    }
  }
  return out;
}

}  // namespace

PassReport insert_pre(CompGraph& g, bool naive) {
  PassReport report{.pass = naive ? "pre(naive)" : "pre"};
  for (const auto& [id, n] : g.nodes()) {
    if (n.kind == OpKind::Pre)
      throw CompileError(ErrorKind::Verify, "PRE pass already ran");
    if (n.kind == OpKind::Input && n.vtype.secrecy == Secrecy::Cipher && !n.key)
      throw CompileError(ErrorKind::Verify, "ciphertext input without a key label");
  }

  auto outkeys = reachable_output_keys(g);
  KeyLabel fallback;
  for (NodeId id : g.outputs())
    if (fallback.empty() || *g.node(id).key < fallback) fallback = *g.node(id).key;

  auto resolve = [&](NodeId id) -> KeyLabel {
    const auto& keys = outkeys[id];
    if (keys.empty())
      throw CompileError(ErrorKind::KeyResolution,
                         "node %" + std::to_string(id) + " reaches no output; cannot pick a target key");
    return *keys.begin();
  };

  if (naive) {
    // Immediately re-encrypt every ciphertext input to the key of the output
    // it feeds (one PRE per input, p == p_naive).
    for (NodeId id : g.inputs()) {
      const GraphNode& in = g.node(id);
      if (in.vtype.secrecy != Secrecy::Cipher) continue;
      KeyLabel target = outkeys[id].empty() ? fallback : *outkeys[id].begin();
      if (target.empty())
        throw CompileError(ErrorKind::KeyResolution, "program has no outputs");
      std::vector<NodeId> users = in.uses;
      std::sort(users.begin(), users.end());
      users.erase(std::unique(users.begin(), users.end()), users.end());
      NodeId pre = g.add_pre(id, target);
      report.pre_inserted += 1;
      report.nodes_added += 1;
      for (NodeId user : users) g.rewrite_operand(user, id, pre);
    }
  }

  // Forward key propagation in topo order, so operand keys are always
  // resolved before their users are visited.
  for (NodeId id : g.topo_order()) {
    GraphNode& n = g.node(id);
    switch (n.kind) {
      case OpKind::Input:
      case OpKind::Const:
      case OpKind::Pre:
        break;
      case OpKind::Output: {
        NodeId operand = n.operands[0];
        const GraphNode& o = g.node(operand);
        if (o.vtype.secrecy == Secrecy::Cipher && o.key != n.key) {
          NodeId pre = g.add_pre(operand, *n.key);
          g.rewrite_operand(id, operand, pre);
          report.pre_inserted += 1;
          report.nodes_added += 1;
        }
        break;
      }
      default: {
        std::set<KeyLabel> keys;
        for (NodeId op : n.operands) {
          const GraphNode& o = g.node(op);
          if (o.vtype.secrecy == Secrecy::Cipher) {
            if (!o.key)
              throw CompileError(ErrorKind::Verify,
                                 "ciphertext operand %" + std::to_string(op) + " has no key");
            keys.insert(*o.key);
          }
        }
        if (keys.size() == 1) {
          n.key = *keys.begin();
        } else if (keys.size() > 1) {
          KeyLabel target = resolve(id);
          n.key = target;
          std::vector<NodeId> ops = n.operands;
          std::sort(ops.begin(), ops.end());
          ops.erase(std::unique(ops.begin(), ops.end()), ops.end());
          for (NodeId op : ops) {
            const GraphNode& o = g.node(op);
            // Identity re-encryptions are skipped; plaintext operands never
            // need a PRE.
            if (o.vtype.secrecy != Secrecy::Cipher || o.key == target) continue;
            NodeId pre = g.add_pre(op, target);
            g.rewrite_operand(id, op, pre);
            report.pre_inserted += 1;
            report.nodes_added += 1;
          }
        }
        break;
      }
    }
  }
  return report;
}

std::vector<PassReport> run_pipeline(CompGraph& g, const PipelineConfig& config) {
  std::vector<PassReport> reports;
  std::set<std::string> seen_warnings;  // each warning surfaces once per compilation
  auto run = [&](const std::string& name) {
    if (name == "fold")
      reports.push_back(constant_fold(g));
    else if (name == "dce")
      reports.push_back(dead_code_eliminate(g));
    else if (name == "rebalance")
      reports.push_back(rebalance(g));
    else if (name == "pre")
      reports.push_back(insert_pre(g, false));
    else
      throw CompileError(ErrorKind::Config, "unknown pass '" + name + "'");
    auto& warnings = reports.back().warnings;
    std::erase_if(warnings, [&](const std::string& w) { return !seen_warnings.insert(w).second; });
    g.verify();
  };

  if (config.no_opt) {
    reports.push_back(insert_pre(g, true));
    g.verify();
    return reports;
  }
  if (!config.pass_names.empty()) {
    for (const auto& name : config.pass_names) run(name);
    return reports;
  }
  for (const char* name : {"fold", "dce", "rebalance", "pre", "dce"}) run(name);
  return reports;
}

}  // namespace helium
