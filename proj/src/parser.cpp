#include <charconv>

#include "helium/parser.hpp"

namespace helium {

namespace {

// Thrown inside the parser to unwind to statement level, where recovery
// skips to the next ';'.
struct ParseBail {};

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

  ParseResult run() {
    ParseResult result;
    while (!at(TokKind::Eof)) {
      try {
        result.ast.statements.push_back(parse_stmt());
      } catch (const ParseBail&) {
        recover();
      }
    }
    result.errors = std::move(errors_);
    return result;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(TokKind kind) const { return peek().kind == kind; }

  const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool accept(TokKind kind) {
    if (!at(kind)) return false;
    advance();
    return true;
  }

  const Token& expect(TokKind kind) {
    if (!at(kind)) fail(std::string("expected ") + token_kind_name(kind));
    return advance();
  }

  [[noreturn]] void fail(const std::string& expected) {
    errors_.push_back(Diagnostic{
        peek().span, expected + ", found " + token_kind_name(peek().kind)});
    throw ParseBail{};
  }

  void recover() {
    while (!at(TokKind::Eof) && !accept(TokKind::Semi)) advance();
  }

  std::string expect_ident() { return expect(TokKind::Ident).lexeme; }

  StmtPtr parse_stmt() {
    auto stmt = std::make_unique<Stmt>();
    stmt->span = peek().span;
    switch (peek().kind) {
      case TokKind::KwInput: stmt->node = parse_input(); break;
      case TokKind::KwOutput: stmt->node = parse_output(); break;
      case TokKind::KwVar: stmt->node = parse_var(); break;
      case TokKind::KwFun: stmt->node = parse_fun(); break;
      case TokKind::KwFor: stmt->node = parse_for(); break;
      case TokKind::KwReturn: stmt->node = parse_return(); break;
      case TokKind::Ident: stmt->node = parse_assignment(); break;
      default: fail("expected a statement");
    }
    return stmt;
  }

  InputStmt parse_input() {
    expect(TokKind::KwInput);
    InputStmt s;
    s.name = expect_ident();
    expect(TokKind::Colon);
    s.type = parse_type();
    // Key label and party are individually optional.
    if (accept(TokKind::At)) s.key = expect_ident();
    if (accept(TokKind::FromArrow)) s.party = expect_ident();
    expect(TokKind::Semi);
    return s;
  }

  OutputStmt parse_output() {
    expect(TokKind::KwOutput);
    OutputStmt s;
    s.name = expect_ident();
    if (accept(TokKind::ToArrow)) s.party = expect_ident();
    if (accept(TokKind::At)) s.key = expect_ident();
    expect(TokKind::Colon);
    s.expr = parse_expr();
    expect(TokKind::Semi);
    return s;
  }

  VarDecl parse_var() {
    expect(TokKind::KwVar);
    VarDecl s;
    s.name = expect_ident();
    expect(TokKind::Colon);
    s.type = parse_type();
    if (accept(TokKind::Assign)) s.init = parse_expr();
    expect(TokKind::Semi);
    return s;
  }

  VarAssignment parse_assignment() {
    VarAssignment s;
    s.name = expect_ident();
    expect(TokKind::Assign);
    s.expr = parse_expr();
    expect(TokKind::Semi);
    return s;
  }

  FuncDecl parse_fun() {
    expect(TokKind::KwFun);
    FuncDecl s;
    s.name = expect_ident();
    expect(TokKind::LParen);
    if (!at(TokKind::RParen)) {
      do {
        FuncParam p;
        p.name = expect_ident();
        if (accept(TokKind::Colon)) p.type = parse_type();
        s.params.push_back(std::move(p));
      } while (accept(TokKind::Comma));
    }
    expect(TokKind::RParen);
    s.body = parse_body();
    return s;
  }

  ForStmt parse_for() {
    expect(TokKind::KwFor);
    ForStmt s;
    expect(TokKind::LParen);
    s.loop_var = expect_ident();
    expect(TokKind::Colon);
    s.iter = parse_expr();
    expect(TokKind::RParen);
    s.body = parse_body();
    return s;
  }

  ReturnStmt parse_return() {
    expect(TokKind::KwReturn);
    ReturnStmt s;
    s.expr = parse_expr();
    expect(TokKind::Semi);
    return s;
  }

  std::vector<StmtPtr> parse_body() {
    expect(TokKind::LBrace);
    std::vector<StmtPtr> body;
    while (!at(TokKind::RBrace)) {
      if (at(TokKind::Eof)) fail("expected '}'");
      body.push_back(parse_stmt());
    }
    expect(TokKind::RBrace);
    if (body.empty()) fail("expected at least one statement in block");
    return body;
  }

  TypeExprAst parse_type() {
    TypeExprAst t;
    t.span = peek().span;
    if (accept(TokKind::KwPlain)) t.plain = true;
    expect(TokKind::KwInt);
    if (accept(TokKind::LBracket)) {
      t.vector_len = parse_expr();
      expect(TokKind::RBracket);
    }
    return t;
  }

  // Precedence: ** (right-assoc, tightest), then *, then +/-, then <</>>.
  static int binding(TokKind kind) {
    switch (kind) {
      case TokKind::Shl:
      case TokKind::Shr: return 1;
      case TokKind::Plus:
      case TokKind::Minus: return 2;
      case TokKind::Star: return 3;
      case TokKind::StarStar: return 4;
      default: return 0;
    }
  }

  static BinOp to_binop(TokKind kind) {
    switch (kind) {
      case TokKind::Plus: return BinOp::Add;
      case TokKind::Minus: return BinOp::Sub;
      case TokKind::Star: return BinOp::Mul;
      case TokKind::StarStar: return BinOp::Pow;
      case TokKind::Shl: return BinOp::RotL;
      default: return BinOp::RotR;
    }
  }

  ExprPtr parse_expr(int min_prec = 1) {
    ExprPtr lhs = parse_primary();
    for (;;) {
      int prec = binding(peek().kind);
      if (prec < min_prec || prec == 0) return lhs;
      BinOp op = to_binop(peek().kind);
      Span op_span = advance().span;
      // Right-associativity for '**' only.
      ExprPtr rhs = parse_expr(op == BinOp::Pow ? prec : prec + 1);
      auto node = std::make_unique<Expr>();
      node->span = op_span;
      node->node = BinaryOp{op, std::move(lhs), std::move(rhs)};
      lhs = std::move(node);
    }
  }

  ExprPtr parse_primary() {
    auto expr = std::make_unique<Expr>();
    expr->span = peek().span;
    if (at(TokKind::IntLit)) {
      const Token& t = advance();
      std::int64_t value = 0;
      std::from_chars(t.lexeme.data(), t.lexeme.data() + t.lexeme.size(), value);
      expr->node = IntLit{value};
      return expr;
    }
    if (at(TokKind::Ident)) {
      std::string name = advance().lexeme;
      if (accept(TokKind::LParen)) {
        Call call;
        call.callee = std::move(name);
        if (!at(TokKind::RParen)) {
          do {
            call.args.push_back(parse_expr());
          } while (accept(TokKind::Comma));
        }
        expect(TokKind::RParen);
        expr->node = std::move(call);
      } else {
        expr->node = Ident{std::move(name)};
      }
      return expr;
    }
    if (accept(TokKind::LParen)) {
      ExprPtr inner = parse_expr();
      expect(TokKind::RParen);
      return inner;
    }
    fail("expected an expression");
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic> errors_;
};

}  // namespace

ParseResult parse(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

ParseResult parse_source(const std::string& source) {
  try {
    return parse(tokenize(source));
  } catch (const CompileError& e) {
    ParseResult r;
    r.errors.push_back(Diagnostic{e.span(), e.what()});
    return r;
  }
}

}  // namespace helium
