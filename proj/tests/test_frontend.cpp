#include <doctest.h>

#include "fuzz_support.hpp"
#include "helium/parser.hpp"
#include "helium/token.hpp"

using namespace helium;

TEST_CASE("tokenize input statement") {
  auto toks = tokenize("input a1: int @Key1 <= Party1;");
  std::vector<TokKind> kinds;
  for (const auto& t : toks) kinds.push_back(t.kind);
  CHECK(kinds == std::vector<TokKind>{TokKind::KwInput, TokKind::Ident, TokKind::Colon,
                                      TokKind::KwInt, TokKind::At, TokKind::Ident,
                                      TokKind::FromArrow, TokKind::Ident, TokKind::Semi,
                                      TokKind::Eof});
  CHECK(toks[1].lexeme == "a1");
  CHECK(toks[5].lexeme == "Key1");
  CHECK(toks[7].span.line == 1);
  CHECK(toks[7].span.column == 24);
}

TEST_CASE("tokenize max-munch operators") {
  auto toks = tokenize("a ** b * c << 2 <= P => Q = 1");
  std::vector<TokKind> kinds;
  for (const auto& t : toks) kinds.push_back(t.kind);
  CHECK(kinds == std::vector<TokKind>{TokKind::Ident, TokKind::StarStar, TokKind::Ident,
                                      TokKind::Star, TokKind::Ident, TokKind::Shl,
                                      TokKind::IntLit, TokKind::FromArrow, TokKind::Ident,
                                      TokKind::ToArrow, TokKind::Ident, TokKind::Assign,
                                      TokKind::IntLit, TokKind::Eof});
}

TEST_CASE("comments and whitespace are skipped") {
  auto toks = tokenize("var x: int; // trailing comment\n// full line\nvar y: int;");
  int idents = 0;
  for (const auto& t : toks)
    if (t.kind == TokKind::Ident) ++idents;
  CHECK(idents == 2);
}

TEST_CASE("lex error on stray character") {
  CHECK_THROWS_AS(tokenize("var x: int $ 3;"), CompileError);
  try {
    tokenize("var x: int $ 3;");
  } catch (const CompileError& e) {
    CHECK(e.kind() == ErrorKind::Lex);
    CHECK(e.span().column == 12);
  }
}

TEST_CASE("parse a full program") {
  auto r = parse_source(
      "input a: int[8] @K1 <= P1;\n"
      "var s: int = a * 2 + 1;\n"
      "fun sq(x) { return x * x; }\n"
      "for (e : a) { s = s + e; }\n"
      "output total => POut @KOut: sq(s);\n");
  REQUIRE(r.errors.empty());
  REQUIRE(r.ast.statements.size() == 5);
  CHECK(std::holds_alternative<InputStmt>(r.ast.statements[0]->node));
  CHECK(std::holds_alternative<VarDecl>(r.ast.statements[1]->node));
  CHECK(std::holds_alternative<FuncDecl>(r.ast.statements[2]->node));
  CHECK(std::holds_alternative<ForStmt>(r.ast.statements[3]->node));
  CHECK(std::holds_alternative<OutputStmt>(r.ast.statements[4]->node));
}

TEST_CASE("precedence and associativity") {
  auto r = parse_source("output o: a + b * c << 1;");
  REQUIRE(r.errors.empty());
  // ((a + (b * c)) << 1)
  const auto& out = std::get<OutputStmt>(r.ast.statements[0]->node);
  const auto& shl = std::get<BinaryOp>(out.expr->node);
  CHECK(shl.op == BinOp::RotL);
  const auto& add = std::get<BinaryOp>(shl.lhs->node);
  CHECK(add.op == BinOp::Add);
  CHECK(std::get<BinaryOp>(add.rhs->node).op == BinOp::Mul);

  auto rp = parse_source("output o: a ** b ** c;");
  REQUIRE(rp.errors.empty());
  const auto& pow = std::get<BinaryOp>(std::get<OutputStmt>(rp.ast.statements[0]->node).expr->node);
  CHECK(pow.op == BinOp::Pow);
  // right associative: a ** (b ** c)
  CHECK(std::holds_alternative<Ident>(pow.lhs->node));
  CHECK(std::get<BinaryOp>(pow.rhs->node).op == BinOp::Pow);

  auto rm = parse_source("output o: a - b - c;");
  const auto& sub = std::get<BinaryOp>(std::get<OutputStmt>(rm.ast.statements[0]->node).expr->node);
  // left associative: (a - b) - c
  CHECK(std::holds_alternative<Ident>(sub.rhs->node));
}

TEST_CASE("recovery yields several diagnostics") {
  auto r = parse_source("var : int;\noutput o1: a;\nvar y int;\noutput o2: b;\n");
  CHECK(r.errors.size() == 2);
  CHECK(r.errors[0].span.line == 1);
  CHECK(r.errors[1].span.line == 3);
  // the valid statements still parsed
  CHECK(r.ast.statements.size() == 2);
}

TEST_CASE("pretty print round trip on fixed programs") {
  const char* sources[] = {
      "input a1: int @Key1 <= Party1;",
      "input v: plain int[100];",
      "var s: int = (a + b) * (c + d);",
      "output o => P @K: a ** 2 ** 3 - (1 << 2);",
      "fun f(x, y: int[4]) { var t: int = x + y; return t; }",
      "for (e : v) { s = s + e * e; }",
  };
  for (const char* src : sources) {
    auto first = parse_source(src);
    REQUIRE(first.errors.empty());
    std::string printed = pretty_print(first.ast);
    auto second = parse_source(printed);
    REQUIRE(second.errors.empty());
    CHECK(structurally_equal(first.ast, second.ast));
    // printing is a fixpoint
    CHECK(pretty_print(second.ast) == printed);
  }
}

TEST_CASE("pretty print round trip on generated asts") {
  fuzz::Rng rng(1234);
  for (int i = 0; i < 300; ++i) {
    Ast ast = fuzz::gen_ast(rng);
    std::string printed = pretty_print(ast);
    auto r = parse_source(printed);
    REQUIRE_MESSAGE(r.errors.empty(), printed);
    CHECK_MESSAGE(structurally_equal(ast, r.ast), printed);
  }
}
