#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "helium/diagnostics.hpp"

namespace helium {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class BinOp { Add, Sub, Mul, Pow, RotL, RotR };

const char* binop_symbol(BinOp op);

struct IntLit {
  std::int64_t value = 0;
};

struct Ident {
  std::string name;
};

struct BinaryOp {
  BinOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Call {
  std::string callee;
  std::vector<ExprPtr> args;
};

struct Expr {
  Span span;
  std::variant<IntLit, Ident, BinaryOp, Call> node;
};

// plain? (int | int[Expr])
struct TypeExprAst {
  Span span;
  bool plain = false;
  ExprPtr vector_len;  // null for scalar int
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct InputStmt {
  std::string name;
  TypeExprAst type;
  std::optional<std::string> key;    // @Key
  std::optional<std::string> party;  // <= Party
};

struct OutputStmt {
  std::string name;
  std::optional<std::string> party;  // => Party
  std::optional<std::string> key;    // @Key
  ExprPtr expr;
};

struct VarDecl {
  std::string name;
  TypeExprAst type;
  ExprPtr init;  // optional
};

struct VarAssignment {
  std::string name;
  ExprPtr expr;
};

struct FuncParam {
  std::string name;
  std::optional<TypeExprAst> type;
};

struct FuncDecl {
  std::string name;
  std::vector<FuncParam> params;
  std::vector<StmtPtr> body;
};

struct ForStmt {
  std::string loop_var;
  ExprPtr iter;
  std::vector<StmtPtr> body;
};

struct ReturnStmt {
  ExprPtr expr;
};

struct Stmt {
  Span span;
  std::variant<InputStmt, OutputStmt, VarDecl, VarAssignment, FuncDecl, ForStmt, ReturnStmt> node;
};

struct Ast {
  std::vector<StmtPtr> statements;
};

bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Ast& a, const Ast& b);

ExprPtr clone(const Expr& e);

// Canonical HEDSL text; parse(pretty_print(a)) is structurally equal to a.
std::string pretty_print(const Ast& ast);
std::string pretty_print(const Expr& expr);

}  // namespace helium
