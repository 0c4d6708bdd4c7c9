#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "helium/runtime.hpp"

namespace helium {

using json = nlohmann::ordered_json;

double CostModel::total(const OpCounts& c) const {
  return add_cc * c.add_cc + add_cp * c.add_cp + sub_cc * c.sub_cc + sub_cp * c.sub_cp +
         mul_cc * c.mul_cc + mul_cp * c.mul_cp + rot * c.rot + pre * c.pre +
         constant * c.constant + load * c.load + store * c.store;
}

CostModel CostModel::from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  CostModel m;
  std::set<std::string> known;
  auto get = [&](const char* name, double& slot) {
    known.insert(name);
    if (j.contains(name)) {
      slot = j.at(name).get<double>();
      if (slot < 0)
        throw CompileError(ErrorKind::Config, std::string("negative cost unit for ") + name);
    }
  };
  get("ADD_CC", m.add_cc);
  get("ADD_CP", m.add_cp);
  get("SUB_CC", m.sub_cc);
  get("SUB_CP", m.sub_cp);
  get("MUL_CC", m.mul_cc);
  get("MUL_CP", m.mul_cp);
  get("ROT", m.rot);
  get("PRE", m.pre);
  get("CONST", m.constant);
  get("LOAD", m.load);
  get("STORE", m.store);
  for (const auto& [name, value] : j.items())
    if (!known.count(name))
      throw CompileError(ErrorKind::Config, "unknown cost unit " + name);
  return m;
}

namespace {

enum class Arith { Add, Sub, Mul };

std::vector<std::int64_t> elementwise(Arith op, const std::vector<std::int64_t>& a,
                                      const std::vector<std::int64_t>& b) {
  if (a.size() != b.size() && a.size() != 1 && b.size() != 1)
    throw CompileError(ErrorKind::Verify, "payload length mismatch in arithmetic");
  std::size_t len = std::max(a.size(), b.size());
  std::vector<std::int64_t> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    std::int64_t x = a[a.size() == 1 ? 0 : i];
    std::int64_t y = b[b.size() == 1 ? 0 : i];
    bool ovf = false;
    switch (op) {
      case Arith::Add: ovf = __builtin_add_overflow(x, y, &out[i]); break;
      case Arith::Sub: ovf = __builtin_sub_overflow(x, y, &out[i]); break;
      case Arith::Mul: ovf = __builtin_mul_overflow(x, y, &out[i]); break;
    }
    if (ovf)
      throw CompileError(ErrorKind::Overflow, "64-bit signed overflow during evaluation");
  }
  return out;
}

std::vector<std::int64_t> rotate(const std::vector<std::int64_t>& v, std::int64_t amount,
                                 bool left) {
  auto len = static_cast<std::int64_t>(v.size());
  std::int64_t k = ((amount % len) + len) % len;
  if (!left) k = (len - k) % len;
  std::vector<std::int64_t> out(v.size());
  for (std::int64_t i = 0; i < len; ++i) out[i] = v[(i + k) % len];
  return out;
}

const std::vector<std::int64_t>& find_input(const InputBundle& inputs,
                                            const std::string& party,
                                            const std::string& name,
                                            std::int64_t shape) {
  auto pit = inputs.find(party);
  if (pit == inputs.end())
    throw CompileError(ErrorKind::MissingInput, "no inputs provided for party '" + party + "'");
  auto iit = pit->second.find(name);
  if (iit == pit->second.end())
    throw CompileError(ErrorKind::MissingInput,
                       "missing input '" + name + "' for party '" + party + "'");
  if (static_cast<std::int64_t>(iit->second.size()) != shape)
    throw CompileError(ErrorKind::MissingInput,
                       "input '" + name + "' has length " + std::to_string(iit->second.size()) +
                           ", expected " + std::to_string(shape));
  return iit->second;
}

}  // namespace

EvalResult evaluate(const Circuit& c, const InputBundle& inputs, const CostModel& cost) {
  EvalResult result;
  std::map<int, LabeledValue> regs;

  auto cipher_key = [&](const LabeledValue& v) -> const KeyLabel& {
    if (!v.key) throw CompileError(ErrorKind::KeyMismatch, "expected a ciphertext operand");
    return *v.key;
  };

  std::size_t input_cursor = 0;
  for (const auto& ins : c.instructions) {
    LabeledValue out;
    auto arg = [&](int i) -> const LabeledValue& { return regs.at(ins.args.at(i)); };
    switch (ins.opcode) {
      case Opcode::LOAD: {
        const CircuitInput& decl = c.inputs.at(input_cursor++);
        out.payload = find_input(inputs, decl.party, decl.name, decl.shape);
        out.key = decl.key;
        ++result.counts.load;
        break;
      }
      case Opcode::CONST:
        out.payload = ins.value;
        ++result.counts.constant;
        break;
      case Opcode::ADD_CC:
      case Opcode::SUB_CC:
      case Opcode::MUL_CC: {
        const LabeledValue& a = arg(0);
        const LabeledValue& b = arg(1);
        if (cipher_key(a) != cipher_key(b))
          throw CompileError(ErrorKind::KeyMismatch,
                             "ct-ct operation saw keys " + *a.key + " and " + *b.key +
                                 " (compiler bug)");
        Arith op = ins.opcode == Opcode::ADD_CC   ? Arith::Add
                   : ins.opcode == Opcode::SUB_CC ? Arith::Sub
                                                  : Arith::Mul;
        out.payload = elementwise(op, a.payload, b.payload);
        out.key = a.key;
        out.depth = std::max(a.depth, b.depth);
        if (ins.opcode == Opcode::MUL_CC) {
          out.depth += 1;
          ++result.counts.mul_cc;
        } else if (ins.opcode == Opcode::ADD_CC) {
          ++result.counts.add_cc;
        } else {
          ++result.counts.sub_cc;
        }
        break;
      }
      case Opcode::ADD_CP:
      case Opcode::SUB_CP:
      case Opcode::MUL_CP: {
        const LabeledValue& a = arg(0);
        const LabeledValue& b = arg(1);
        Arith op = ins.opcode == Opcode::ADD_CP   ? Arith::Add
                   : ins.opcode == Opcode::SUB_CP ? Arith::Sub
                                                  : Arith::Mul;
        out.payload = elementwise(op, a.payload, b.payload);
        out.key = a.key ? a.key : b.key;
        out.depth = std::max(a.depth, b.depth);
        if (ins.opcode == Opcode::ADD_CP) ++result.counts.add_cp;
        else if (ins.opcode == Opcode::SUB_CP) ++result.counts.sub_cp;
        else ++result.counts.mul_cp;
        break;
      }
      case Opcode::ROT_L:
      case Opcode::ROT_R: {
        const LabeledValue& a = arg(0);
        std::int64_t amount = arg(1).payload.at(0);
        out.payload = rotate(a.payload, amount, ins.opcode == Opcode::ROT_L);
        out.key = a.key;
        out.depth = a.depth;
        ++result.counts.rot;
        break;
      }
      case Opcode::PRE: {
        const LabeledValue& a = arg(0);
        if (ins.from_key && cipher_key(a) != *ins.from_key)
          throw CompileError(ErrorKind::KeyMismatch,
                             "PRE source key does not match operand key (compiler bug)");
        out.payload = a.payload;
        out.key = ins.key;  // pure relabeling, zero depth charge
        out.depth = a.depth;
        ++result.counts.pre;
        break;
      }
      case Opcode::STORE: {
        const LabeledValue& a = arg(0);
        if (a.key && ins.key && *a.key != *ins.key)
          throw CompileError(ErrorKind::KeyMismatch,
                             "output stored under the wrong key (compiler bug)");
        out = a;
        result.outputs[ins.name] = a;
        ++result.counts.store;
        break;
      }
    }
    result.max_depth = std::max(result.max_depth, out.depth);
    regs[ins.id] = std::move(out);
  }
  if (result.max_depth > c.suggested_params.depth_budget)
    throw CompileError(ErrorKind::Verify, "evaluation exceeded the circuit depth budget");
  result.total_cost = cost.total(result.counts);
  return result;
}

std::map<std::string, std::vector<std::int64_t>> graph_evaluate(const CompGraph& g,
                                                                const InputBundle& inputs) {
  std::map<NodeId, std::vector<std::int64_t>> values;
  std::map<std::string, std::vector<std::int64_t>> outputs;
  for (NodeId id : g.topo_order()) {
    const GraphNode& n = g.node(id);
    std::vector<std::int64_t> v;
    switch (n.kind) {
      case OpKind::Input: v = find_input(inputs, n.party, n.name, n.vtype.len()); break;
      case OpKind::Const: v = n.value; break;
      case OpKind::Output:
      case OpKind::Pre: v = values.at(n.operands[0]); break;
      case OpKind::Add: v = elementwise(Arith::Add, values.at(n.operands[0]), values.at(n.operands[1])); break;
      case OpKind::Sub: v = elementwise(Arith::Sub, values.at(n.operands[0]), values.at(n.operands[1])); break;
      case OpKind::Mul: v = elementwise(Arith::Mul, values.at(n.operands[0]), values.at(n.operands[1])); break;
      case OpKind::Pow: {
        std::int64_t e = g.node(n.operands[1]).value.at(0);
        const auto& base = values.at(n.operands[0]);
        v.assign(base.size(), 1);
        for (std::int64_t i = 0; i < e; ++i) v = elementwise(Arith::Mul, v, base);
        break;
      }
      case OpKind::RotL:
      case OpKind::RotR:
        v = rotate(values.at(n.operands[0]), g.node(n.operands[1]).value.at(0),
                   n.kind == OpKind::RotL);
        break;
    }
    if (n.kind == OpKind::Output) outputs[n.name] = v;
    values[id] = std::move(v);
  }
  return outputs;
}

namespace {

// Scalar/vector value for the direct AST interpreter.
struct OVal {
  std::vector<std::int64_t> payload;
  bool scalar = true;
};

struct OScope {
  std::map<std::string, OVal> values;
  std::map<std::string, std::pair<const FuncDecl*, OScope*>> funcs;
  OScope* parent = nullptr;

  OVal* lookup(const std::string& name) {
    for (OScope* s = this; s; s = s->parent) {
      auto it = s->values.find(name);
      if (it != s->values.end()) return &it->second;
    }
    return nullptr;
  }
  std::pair<const FuncDecl*, OScope*> lookup_func(const std::string& name) {
    for (OScope* s = this; s; s = s->parent) {
      auto it = s->funcs.find(name);
      if (it != s->funcs.end()) return it->second;
    }
    return {nullptr, nullptr};
  }
};

// The oracle mirrors the language semantics directly on the AST, without
// graphs, passes, or keys: its only shared machinery with the compiled path
// is elementwise().
class Oracle {
 public:
  explicit Oracle(const InputBundle& inputs) {
    for (const auto& [party, values] : inputs)
      for (const auto& [name, payload] : values) flat_[name] = payload;
  }

  std::map<std::string, std::vector<std::int64_t>> run(const Ast& ast) {
    OScope global;
    for (const auto& stmt : ast.statements) exec(*stmt, global, nullptr);
    return outputs_;
  }

 private:
  OVal eval(const Expr& expr, OScope& scope) {
    if (auto* lit = std::get_if<IntLit>(&expr.node)) return OVal{{lit->value}, true};
    if (auto* id = std::get_if<Ident>(&expr.node)) {
      OVal* v = scope.lookup(id->name);
      if (!v)
        throw CompileError(ErrorKind::Name, expr.span, "undefined identifier '" + id->name + "'");
      return *v;
    }
    if (auto* bin = std::get_if<BinaryOp>(&expr.node)) {
      OVal lhs = eval(*bin->lhs, scope);
      OVal rhs = eval(*bin->rhs, scope);
      switch (bin->op) {
        case BinOp::Add: return combine(Arith::Add, lhs, rhs);
        case BinOp::Sub: return combine(Arith::Sub, lhs, rhs);
        case BinOp::Mul: return combine(Arith::Mul, lhs, rhs);
        case BinOp::Pow: {
          if (!rhs.scalar || rhs.payload.at(0) < 0)
            throw CompileError(ErrorKind::Type, expr.span, "exponent must be a non-negative scalar");
          OVal out{std::vector<std::int64_t>(lhs.payload.size(), 1), lhs.scalar};
          for (std::int64_t i = 0; i < rhs.payload[0]; ++i)
            out.payload = elementwise(Arith::Mul, out.payload, lhs.payload);
          return out;
        }
        case BinOp::RotL:
        case BinOp::RotR: {
          if (lhs.scalar)
            throw CompileError(ErrorKind::Type, expr.span, "rotation requires a vector");
          return OVal{rotate(lhs.payload, rhs.payload.at(0), bin->op == BinOp::RotL), false};
        }
      }
    }
    const auto& call = std::get<Call>(expr.node);
    if (call.callee == "size") {
      OVal v = eval(*call.args.at(0), scope);
      if (v.scalar)
        throw CompileError(ErrorKind::Type, expr.span, "size() requires a vector argument");
      return OVal{{static_cast<std::int64_t>(v.payload.size())}, true};
    }
    auto [fn, decl_scope] = scope.lookup_func(call.callee);
    if (!fn)
      throw CompileError(ErrorKind::Name, expr.span, "undefined function '" + call.callee + "'");
    if (call.args.size() != fn->params.size())
      throw CompileError(ErrorKind::Arity, expr.span, "argument count mismatch");
    OScope frame;
    frame.parent = decl_scope;
    for (std::size_t i = 0; i < call.args.size(); ++i)
      frame.values[fn->params[i].name] = eval(*call.args[i], scope);
    OVal result;
    bool returned = false;
    for (const auto& stmt : fn->body) exec(*stmt, frame, [&](OVal v) {
      result = std::move(v);
      returned = true;
    });
    if (!returned)
      throw CompileError(ErrorKind::Name, expr.span, "function did not return");
    return result;
  }

  static OVal combine(Arith op, const OVal& a, const OVal& b) {
    return OVal{elementwise(op, a.payload, b.payload), a.scalar && b.scalar};
  }

  using ReturnSink = std::function<void(OVal)>;

  void exec(const Stmt& stmt, OScope& scope, ReturnSink ret) {
    if (auto* in = std::get_if<InputStmt>(&stmt.node)) {
      auto it = flat_.find(in->name);
      if (it == flat_.end())
        throw CompileError(ErrorKind::MissingInput, stmt.span, "missing input '" + in->name + "'");
      scope.values[in->name] = OVal{it->second, in->type.vector_len == nullptr};
      return;
    }
    if (auto* out = std::get_if<OutputStmt>(&stmt.node)) {
      outputs_[out->name] = eval(*out->expr, scope).payload;
      return;
    }
    if (auto* var = std::get_if<VarDecl>(&stmt.node)) {
      if (var->init) scope.values[var->name] = eval(*var->init, scope);
      return;
    }
    if (auto* asg = std::get_if<VarAssignment>(&stmt.node)) {
      OVal* slot = scope.lookup(asg->name);
      if (!slot)
        throw CompileError(ErrorKind::Name, stmt.span, "undefined variable '" + asg->name + "'");
      *slot = eval(*asg->expr, scope);
      return;
    }
    if (auto* fn = std::get_if<FuncDecl>(&stmt.node)) {
      scope.funcs[fn->name] = {fn, &scope};
      return;
    }
    if (auto* loop = std::get_if<ForStmt>(&stmt.node)) {
      OVal vec = eval(*loop->iter, scope);
      if (vec.scalar)
        throw CompileError(ErrorKind::LoopBound, stmt.span, "loop target must be a vector");
      auto len = static_cast<std::int64_t>(vec.payload.size());
      for (std::int64_t i = 0; i < len; ++i) {
        OScope body;
        body.parent = &scope;
        // Same slot-projection semantics as the compiled path: iteration i
        // sees the vector rotated left by i.
        body.values[loop->loop_var] = OVal{rotate(vec.payload, i, true), false};
        for (const auto& s : loop->body) exec(*s, body, ret);
      }
      return;
    }
    const auto& r = std::get<ReturnStmt>(stmt.node);
    if (!ret)
      throw CompileError(ErrorKind::Name, stmt.span, "return outside of a function");
    ret(eval(*r.expr, scope));
  }

  std::map<std::string, std::vector<std::int64_t>> flat_;
  std::map<std::string, std::vector<std::int64_t>> outputs_;
};

}  // namespace

std::map<std::string, std::vector<std::int64_t>> oracle_evaluate(const Ast& ast,
                                                                 const InputBundle& inputs) {
  Oracle oracle(inputs);
  return oracle.run(ast);
}

InputBundle input_bundle_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  InputBundle bundle;
  for (const auto& [party, values] : j.items()) {
    for (const auto& [name, v] : values.items()) {
      if (v.is_number_integer())
        bundle[party][name] = {v.get<std::int64_t>()};
      else
        bundle[party][name] = v.get<std::vector<std::int64_t>>();
    }
  }
  return bundle;
}

std::string outputs_to_json(const std::map<std::string, LabeledValue>& outputs) {
  json j;
  for (const auto& [name, value] : outputs) {
    json jo;
    jo["key"] = value.key ? json(*value.key) : json(nullptr);
    jo["depth"] = value.depth;
    if (value.payload.size() == 1)
      jo["value"] = value.payload[0];
    else
      jo["value"] = value.payload;
    j[name] = std::move(jo);
  }
  return j.dump(2) + "\n";
}

}  // namespace helium
