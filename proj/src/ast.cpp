#include <sstream>

#include "helium/ast.hpp"

namespace helium {

const char* binop_symbol(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Pow: return "**";
    case BinOp::RotL: return "<<";
    case BinOp::RotR: return ">>";
  }
  return "?";
}

ExprPtr clone(const Expr& e) {
  auto out = std::make_unique<Expr>();
  out->span = e.span;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLit> || std::is_same_v<T, Ident>) {
          out->node = n;
        } else if constexpr (std::is_same_v<T, BinaryOp>) {
          out->node = BinaryOp{n.op, clone(*n.lhs), clone(*n.rhs)};
        } else {
          Call c;
          c.callee = n.callee;
          for (const auto& a : n.args) c.args.push_back(clone(*a));
          out->node = std::move(c);
        }
      },
      e.node);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* la = std::get_if<IntLit>(&a.node))
    return la->value == std::get<IntLit>(b.node).value;
  if (auto* ia = std::get_if<Ident>(&a.node))
    return ia->name == std::get<Ident>(b.node).name;
  if (auto* ba = std::get_if<BinaryOp>(&a.node)) {
    const auto& bb = std::get<BinaryOp>(b.node);
    return ba->op == bb.op && structurally_equal(*ba->lhs, *bb.lhs) &&
           structurally_equal(*ba->rhs, *bb.rhs);
  }
  const auto& ca = std::get<Call>(a.node);
  const auto& cb = std::get<Call>(b.node);
  if (ca.callee != cb.callee || ca.args.size() != cb.args.size()) return false;
  for (std::size_t i = 0; i < ca.args.size(); ++i)
    if (!structurally_equal(*ca.args[i], *cb.args[i])) return false;
  return true;
}

namespace {

bool type_equal(const TypeExprAst& a, const TypeExprAst& b) {
  if (a.plain != b.plain) return false;
  if ((a.vector_len == nullptr) != (b.vector_len == nullptr)) return false;
  return !a.vector_len || structurally_equal(*a.vector_len, *b.vector_len);
}

bool stmt_equal(const Stmt& a, const Stmt& b);

bool body_equal(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!stmt_equal(*a[i], *b[i])) return false;
  return true;
}

bool stmt_equal(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* ia = std::get_if<InputStmt>(&a.node)) {
    const auto& ib = std::get<InputStmt>(b.node);
    return ia->name == ib.name && type_equal(ia->type, ib.type) &&
           ia->key == ib.key && ia->party == ib.party;
  }
  if (auto* oa = std::get_if<OutputStmt>(&a.node)) {
    const auto& ob = std::get<OutputStmt>(b.node);
    return oa->name == ob.name && oa->party == ob.party && oa->key == ob.key &&
           structurally_equal(*oa->expr, *ob.expr);
  }
  if (auto* va = std::get_if<VarDecl>(&a.node)) {
    const auto& vb = std::get<VarDecl>(b.node);
    if (va->name != vb.name || !type_equal(va->type, vb.type)) return false;
    if ((va->init == nullptr) != (vb.init == nullptr)) return false;
    return !va->init || structurally_equal(*va->init, *vb.init);
  }
  if (auto* aa = std::get_if<VarAssignment>(&a.node)) {
    const auto& ab = std::get<VarAssignment>(b.node);
    return aa->name == ab.name && structurally_equal(*aa->expr, *ab.expr);
  }
  if (auto* fa = std::get_if<FuncDecl>(&a.node)) {
    const auto& fb = std::get<FuncDecl>(b.node);
    if (fa->name != fb.name || fa->params.size() != fb.params.size()) return false;
    for (std::size_t i = 0; i < fa->params.size(); ++i) {
      if (fa->params[i].name != fb.params[i].name) return false;
      const auto& ta = fa->params[i].type;
      const auto& tb = fb.params[i].type;
      if (ta.has_value() != tb.has_value()) return false;
      if (ta && !type_equal(*ta, *tb)) return false;
    }
    return body_equal(fa->body, fb.body);
  }
  if (auto* ra = std::get_if<ForStmt>(&a.node)) {
    const auto& rb = std::get<ForStmt>(b.node);
    return ra->loop_var == rb.loop_var && structurally_equal(*ra->iter, *rb.iter) &&
           body_equal(ra->body, rb.body);
  }
  return structurally_equal(*std::get<ReturnStmt>(a.node).expr,
                            *std::get<ReturnStmt>(b.node).expr);
}

int precedence(BinOp op) {
  switch (op) {
    case BinOp::RotL:
    case BinOp::RotR: return 1;
    case BinOp::Add:
    case BinOp::Sub: return 2;
    case BinOp::Mul: return 3;
    case BinOp::Pow: return 4;
  }
  return 0;
}

// Minimal parentheses: parenthesize a child whose precedence is looser than
// the parent, or equal on the non-associated side.
void print_expr(std::ostream& os, const Expr& e, int parent_prec, bool nonassoc_side) {
  if (auto* lit = std::get_if<IntLit>(&e.node)) {
    os << lit->value;
    return;
  }
  if (auto* id = std::get_if<Ident>(&e.node)) {
    os << id->name;
    return;
  }
  if (auto* call = std::get_if<Call>(&e.node)) {
    os << call->callee << "(";
    for (std::size_t i = 0; i < call->args.size(); ++i) {
      if (i) os << ", ";
      print_expr(os, *call->args[i], 0, false);
    }
    os << ")";
    return;
  }
  const auto& bin = std::get<BinaryOp>(e.node);
  int prec = precedence(bin.op);
  bool right_assoc = bin.op == BinOp::Pow;
  bool need_parens =
      prec < parent_prec || (prec == parent_prec && nonassoc_side);
  if (need_parens) os << "(";
  print_expr(os, *bin.lhs, prec, right_assoc);
  os << " " << binop_symbol(bin.op) << " ";
  print_expr(os, *bin.rhs, prec, !right_assoc);
  if (need_parens) os << ")";
}

void print_type(std::ostream& os, const TypeExprAst& t) {
  if (t.plain) os << "plain ";
  os << "int";
  if (t.vector_len) {
    os << "[";
    print_expr(os, *t.vector_len, 0, false);
    os << "]";
  }
}

void print_stmt(std::ostream& os, const Stmt& s, int indent);

void print_body(std::ostream& os, const std::vector<StmtPtr>& body, int indent) {
  os << "{\n";
  for (const auto& s : body) print_stmt(os, *s, indent + 1);
  for (int i = 0; i < indent; ++i) os << "    ";
  os << "}\n";
}

void print_stmt(std::ostream& os, const Stmt& s, int indent) {
  for (int i = 0; i < indent; ++i) os << "    ";
  if (auto* in = std::get_if<InputStmt>(&s.node)) {
    os << "input " << in->name << ": ";
    print_type(os, in->type);
    if (in->key) os << " @" << *in->key;
    if (in->party) os << " <= " << *in->party;
    os << ";\n";
  } else if (auto* out = std::get_if<OutputStmt>(&s.node)) {
    os << "output " << out->name;
    if (out->party) os << " => " << *out->party;
    if (out->key) os << " @" << *out->key;
    os << ": ";
    print_expr(os, *out->expr, 0, false);
    os << ";\n";
  } else if (auto* var = std::get_if<VarDecl>(&s.node)) {
    os << "var " << var->name << ": ";
    print_type(os, var->type);
    if (var->init) {
      os << " = ";
      print_expr(os, *var->init, 0, false);
    }
    os << ";\n";
  } else if (auto* asg = std::get_if<VarAssignment>(&s.node)) {
    os << asg->name << " = ";
    print_expr(os, *asg->expr, 0, false);
    os << ";\n";
  } else if (auto* fn = std::get_if<FuncDecl>(&s.node)) {
    os << "fun " << fn->name << "(";
    for (std::size_t i = 0; i < fn->params.size(); ++i) {
      if (i) os << ", ";
      os << fn->params[i].name;
      if (fn->params[i].type) {
        os << ": ";
        print_type(os, *fn->params[i].type);
      }
    }
    os << ") ";
    print_body(os, fn->body, indent);
  } else if (auto* loop = std::get_if<ForStmt>(&s.node)) {
    os << "for (" << loop->loop_var << " : ";
    print_expr(os, *loop->iter, 0, false);
    os << ") ";
    print_body(os, loop->body, indent);
  } else {
    os << "return ";
    print_expr(os, *std::get<ReturnStmt>(s.node).expr, 0, false);
    os << ";\n";
  }
}

}  // namespace

bool structurally_equal(const Ast& a, const Ast& b) {
  if (a.statements.size() != b.statements.size()) return false;
  for (std::size_t i = 0; i < a.statements.size(); ++i)
    if (!stmt_equal(*a.statements[i], *b.statements[i])) return false;
  return true;
}

std::string pretty_print(const Expr& expr) {
  std::ostringstream os;
  print_expr(os, expr, 0, false);
  return os.str();
}

std::string pretty_print(const Ast& ast) {
  std::ostringstream os;
  for (const auto& s : ast.statements) print_stmt(os, *s, 0);
  return os.str();
}

}  // namespace helium
