#include <map>
#include <memory>
#include <set>
#include <vector>

#include "helium/elaborate.hpp"

namespace helium {

namespace {

struct Binding {
  NodeId node = -1;  // -1 => declared but uninitialized
  bool assignable = false;
};

struct Scope {
  std::map<std::string, Binding> values;
  std::map<std::string, std::pair<const FuncDecl*, Scope*>> funcs;
  Scope* parent = nullptr;

  Binding* lookup_value(const std::string& name) {
    for (Scope* s = this; s; s = s->parent) {
      auto it = s->values.find(name);
      if (it != s->values.end()) return &it->second;
    }
    return nullptr;
  }

  std::pair<const FuncDecl*, Scope*> lookup_func(const std::string& name) {
    for (Scope* s = this; s; s = s->parent) {
      auto it = s->funcs.find(name);
      if (it != s->funcs.end()) return it->second;
    }
    return {nullptr, nullptr};
  }

  bool declared_here(const std::string& name) const {
    return values.count(name) || funcs.count(name);
  }
};

class Elaborator {
 public:
  CompGraph run(const Ast& ast) {
    Scope global;
    for (const auto& stmt : ast.statements) exec_stmt(*stmt, global, nullptr);
    return std::move(graph_);
  }

 private:
  // Compile-time evaluation of a Const-typed subgraph (exponents, rotation
  // amounts, vector lengths, loop bounds). The folding pass handles the
  // general case later; this only serves contexts that need a value now.
  std::vector<std::int64_t> const_eval_node(NodeId id, const Span& span) {
    const GraphNode& n = graph_.node(id);
    if (n.vtype.secrecy != Secrecy::Const)
      throw CompileError(ErrorKind::Type, span, "expression is not a compile-time constant");
    if (n.kind == OpKind::Const) return n.value;
    if (!is_binary_op(n.kind))
      throw CompileError(ErrorKind::Type, span, "expression is not a compile-time constant");
    auto lhs = const_eval_node(n.operands[0], span);
    auto rhs = const_eval_node(n.operands[1], span);
    std::vector<std::int64_t> out(n.vtype.len());
    for (std::size_t i = 0; i < out.size(); ++i) {
      std::int64_t a = lhs[lhs.size() == 1 ? 0 : i];
      std::int64_t b = rhs[rhs.size() == 1 ? 0 : i];
      std::int64_t r = 0;
      bool ovf = false;
      switch (n.kind) {
        case OpKind::Add: ovf = __builtin_add_overflow(a, b, &r); break;
        case OpKind::Sub: ovf = __builtin_sub_overflow(a, b, &r); break;
        case OpKind::Mul: ovf = __builtin_mul_overflow(a, b, &r); break;
        case OpKind::RotL: {
          auto len = static_cast<std::int64_t>(lhs.size());
          r = lhs[(i + ((b % len) + len) % len) % len];
          break;
        }
        case OpKind::RotR: {
          auto len = static_cast<std::int64_t>(lhs.size());
          r = lhs[(i + len - ((b % len) + len) % len) % len];
          break;
        }
        default:
          throw CompileError(ErrorKind::Type, span, "expression is not a compile-time constant");
      }
      if (ovf) throw CompileError(ErrorKind::Overflow, span, "constant expression overflows");
      out[i] = r;
    }
    return out;
  }

  std::int64_t const_eval_scalar(NodeId id, const Span& span) {
    auto v = const_eval_node(id, span);
    if (v.size() != 1)
      throw CompileError(ErrorKind::Type, span, "expected a scalar constant");
    return v[0];
  }

  ValueType elaborate_type(const TypeExprAst& t, Scope& scope) {
    Secrecy sec = t.plain ? Secrecy::Plain : Secrecy::Cipher;
    if (!t.vector_len) return ValueType::scalar(sec);
    NodeId len_node = eval_expr(*t.vector_len, scope);
    std::int64_t len = const_eval_scalar(len_node, t.span);
    if (len < 1)
      throw CompileError(ErrorKind::Type, t.span, "vector length must be >= 1");
    return ValueType::vector(len, sec);
  }

  NodeId lower_pow(NodeId base, std::int64_t exponent, const Span& span) {
    if (exponent < 0)
      throw CompileError(ErrorKind::Type, span, "exponent must be non-negative");
    const ValueType bt = graph_.node(base).vtype;
    if (exponent == 0) {
      std::vector<std::int64_t> ones(bt.len(), 1);
      return graph_.add_const_vector(ones, ValueType{bt.vec_len, Secrecy::Const});
    }
    // Square-and-multiply keeps the chain depth at ceil(log2 e).
    NodeId result = -1;
    NodeId square = base;
    std::int64_t e = exponent;
    while (e > 0) {
      if (e & 1) result = result < 0 ? square : graph_.add_op(OpKind::Mul, result, square);
      e >>= 1;
      if (e > 0) square = graph_.add_op(OpKind::Mul, square, square);
    }
    return result;
  }

  NodeId eval_expr(const Expr& expr, Scope& scope) {
    if (auto* lit = std::get_if<IntLit>(&expr.node)) return graph_.add_const(lit->value);
    if (auto* id = std::get_if<Ident>(&expr.node)) {
      Binding* b = scope.lookup_value(id->name);
      if (!b) {
        if (scope.lookup_func(id->name).first)
          throw CompileError(ErrorKind::Name, expr.span,
                             "'" + id->name + "' is a function, not a value");
        throw CompileError(ErrorKind::Name, expr.span, "undefined identifier '" + id->name + "'");
      }
      if (b->node < 0)
        throw CompileError(ErrorKind::Name, expr.span,
                           "use of uninitialized variable '" + id->name + "'");
      return b->node;
    }
    if (auto* bin = std::get_if<BinaryOp>(&expr.node)) {
      NodeId lhs = eval_expr(*bin->lhs, scope);
      if (bin->op == BinOp::Pow) {
        NodeId rhs = eval_expr(*bin->rhs, scope);
        return lower_pow(lhs, const_eval_scalar(rhs, bin->rhs->span), expr.span);
      }
      NodeId rhs = eval_expr(*bin->rhs, scope);
      if (bin->op == BinOp::RotL || bin->op == BinOp::RotR) {
        if (graph_.node(rhs).kind != OpKind::Const)
          rhs = graph_.add_const(const_eval_scalar(rhs, bin->rhs->span));
        return graph_.add_op(bin->op == BinOp::RotL ? OpKind::RotL : OpKind::RotR, lhs, rhs);
      }
      OpKind kind = bin->op == BinOp::Add   ? OpKind::Add
                    : bin->op == BinOp::Sub ? OpKind::Sub
                                            : OpKind::Mul;
      return graph_.add_op(kind, lhs, rhs);
    }
    return eval_call(std::get<Call>(expr.node), expr.span, scope);
  }

  NodeId eval_call(const Call& call, const Span& span, Scope& scope) {
    if (call.callee == "size") {
      if (call.args.size() != 1)
        throw CompileError(ErrorKind::Arity, span, "size() takes exactly one argument");
      NodeId arg = eval_expr(*call.args[0], scope);
      const ValueType& t = graph_.node(arg).vtype;
      if (!t.is_vector())
        throw CompileError(ErrorKind::Type, span, "size() requires a vector argument");
      return graph_.add_const(*t.vec_len);
    }

    auto [decl, decl_scope] = scope.lookup_func(call.callee);
    if (!decl)
      throw CompileError(ErrorKind::Name, span, "undefined function '" + call.callee + "'");
    if (active_calls_.count(call.callee))
      throw CompileError(ErrorKind::Recursion, span,
                         "recursive call to '" + call.callee + "'");
    if (call.args.size() != decl->params.size())
      throw CompileError(ErrorKind::Arity, span,
                         "'" + call.callee + "' expects " + std::to_string(decl->params.size()) +
                             " arguments, got " + std::to_string(call.args.size()));

    std::vector<NodeId> args;
    std::string sig = call.callee;
    for (std::size_t i = 0; i < call.args.size(); ++i) {
      NodeId arg = eval_expr(*call.args[i], scope);
      const ValueType at = graph_.node(arg).vtype;
      if (decl->params[i].type) {
        ValueType want = elaborate_type(*decl->params[i].type, scope);
        if (want.vec_len != at.vec_len ||
            (want.secrecy == Secrecy::Plain) != (at.secrecy == Secrecy::Plain))
          throw CompileError(ErrorKind::Type, call.args[i]->span,
                             "argument " + std::to_string(i + 1) + " of '" + call.callee +
                                 "': expected " + to_string(want) + ", got " + to_string(at));
      }
      sig += "/" + to_string(at);
      args.push_back(arg);
    }
    specializations_.insert(sig);  // one type-check per (function, arg types)

    // Inline: the body opens a fresh child scope of the definition site.
    Scope frame;
    frame.parent = decl_scope;
    for (std::size_t i = 0; i < args.size(); ++i)
      frame.values[decl->params[i].name] = Binding{args[i], false};

    active_calls_.insert(call.callee);
    NodeId result = -1;
    for (const auto& stmt : decl->body) exec_stmt(*stmt, frame, &result);
    active_calls_.erase(call.callee);
    if (result < 0)
      throw CompileError(ErrorKind::Name, span,
                         "function '" + call.callee + "' did not return a value");
    return result;
  }

  void exec_body(const std::vector<StmtPtr>& body, Scope& scope, NodeId* ret) {
    for (const auto& stmt : body) exec_stmt(*stmt, scope, ret);
  }

  void exec_stmt(const Stmt& stmt, Scope& scope, NodeId* ret) {
    if (auto* in = std::get_if<InputStmt>(&stmt.node)) {
      if (scope.declared_here(in->name))
        throw CompileError(ErrorKind::Name, stmt.span, "redefinition of '" + in->name + "'");
      ValueType vtype = elaborate_type(in->type, scope);
      PartyId party = in->party.value_or("Party_" + in->name);
      std::optional<KeyLabel> key;
      if (vtype.secrecy == Secrecy::Plain) {
        if (in->key)
          throw CompileError(ErrorKind::Type, stmt.span,
                             "plain input '" + in->name + "' cannot carry a key label");
      } else {
        key = in->key.value_or("Key_" + party);
      }
      NodeId id = graph_.add_input(in->name, party, key, vtype);
      scope.values[in->name] = Binding{id, false};
      return;
    }
    if (auto* out = std::get_if<OutputStmt>(&stmt.node)) {
      if (!output_names_.insert(out->name).second)
        throw CompileError(ErrorKind::Name, stmt.span, "duplicate output '" + out->name + "'");
      NodeId value = eval_expr(*out->expr, scope);
      graph_.add_output(out->name, out->party.value_or("Party_Out"),
                        out->key.value_or("Key_Out"), value);
      return;
    }
    if (auto* var = std::get_if<VarDecl>(&stmt.node)) {
      if (scope.declared_here(var->name))
        throw CompileError(ErrorKind::Name, stmt.span, "redefinition of '" + var->name + "'");
      NodeId init = -1;
      if (var->init) {
        init = eval_expr(*var->init, scope);
        ValueType declared = elaborate_type(var->type, scope);
        const ValueType got = graph_.node(init).vtype;
        if (declared.is_vector() && got.is_vector() && declared.vec_len != got.vec_len)
          throw CompileError(ErrorKind::Type, stmt.span,
                             "initializer has type " + to_string(got) + ", declared " +
                                 to_string(declared));
      }
      scope.values[var->name] = Binding{init, true};
      return;
    }
    if (auto* asg = std::get_if<VarAssignment>(&stmt.node)) {
      Binding* b = scope.lookup_value(asg->name);
      if (!b)
        throw CompileError(ErrorKind::Name, stmt.span, "undefined variable '" + asg->name + "'");
      if (!b->assignable)
        throw CompileError(ErrorKind::Name, stmt.span,
                           "'" + asg->name + "' is not assignable");
      b->node = eval_expr(*asg->expr, scope);
      return;
    }
    if (auto* fn = std::get_if<FuncDecl>(&stmt.node)) {
      if (scope.declared_here(fn->name))
        throw CompileError(ErrorKind::Name, stmt.span, "redefinition of '" + fn->name + "'");
      int returns = 0;
      for (const auto& s : fn->body)
        if (std::holds_alternative<ReturnStmt>(s->node)) ++returns;
      if (returns != 1 || !std::holds_alternative<ReturnStmt>(fn->body.back()->node))
        throw CompileError(ErrorKind::Name, stmt.span,
                           "function '" + fn->name +
                               "' must contain exactly one return statement, as its last statement");
      scope.funcs[fn->name] = {fn, &scope};
      return;
    }
    if (auto* loop = std::get_if<ForStmt>(&stmt.node)) {
      NodeId vec = eval_expr(*loop->iter, scope);
      const ValueType t = graph_.node(vec).vtype;
      if (!t.is_vector())
        throw CompileError(ErrorKind::LoopBound, stmt.span,
                           "loop iteration target must be a fixed-size vector");
      std::int64_t len = *t.vec_len;
      for (std::int64_t i = 0; i < len; ++i) {
        // Slot projection: iteration i sees the vector rotated left by i, so
        // slot 0 holds element i. Assignments thread through iterations via
        // the enclosing scope.
        NodeId element = vec;
        if (i > 0) element = graph_.add_op(OpKind::RotL, vec, graph_.add_const(i));
        Scope body;
        body.parent = &scope;
        body.values[loop->loop_var] = Binding{element, false};
        exec_body(loop->body, body, ret);
      }
      return;
    }
    const auto& r = std::get<ReturnStmt>(stmt.node);
    if (!ret)
      throw CompileError(ErrorKind::Name, stmt.span, "return outside of a function");
    *ret = eval_expr(*r.expr, scope);
  }

  CompGraph graph_;
  std::set<std::string> active_calls_;
  std::set<std::string> specializations_;
  std::set<std::string> output_names_;
};

}  // namespace

CompGraph elaborate(const Ast& ast) { return Elaborator().run(ast); }

}  // namespace helium
