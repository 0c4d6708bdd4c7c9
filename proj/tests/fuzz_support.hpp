#pragma once

// Random-program generators shared by the unit and acceptance suites.
//
// gen_ast:     grammar-directed AST sampler for the printer/parser
//              round-trip property. Covers every statement and operator.
// gen_program: well-typed HEDSL source with every input used and a single
//              output key, plus matched random bit bundles. Values stay
//              tiny (bit inputs, constants <= 3, bounded expression depth)
//              so evaluation never overflows.

#include <cstdint>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helium/ast.hpp"
#include "helium/runtime.hpp"

namespace fuzz {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// ---- round-trip AST generator -------------------------------------------

inline helium::ExprPtr gen_expr(Rng& rng, int depth) {
  using namespace helium;
  auto e = std::make_unique<Expr>();
  int choice = depth <= 0 ? pick(rng, 0, 1) : pick(rng, 0, 3);
  switch (choice) {
    case 0:
      e->node = IntLit{pick(rng, 0, 99)};
      break;
    case 1:
      e->node = Ident{"v" + std::to_string(pick(rng, 0, 5))};
      break;
    case 2: {
      BinaryOp b;
      b.op = static_cast<BinOp>(pick(rng, 0, 5));
      b.lhs = gen_expr(rng, depth - 1);
      b.rhs = gen_expr(rng, depth - 1);
      e->node = std::move(b);
      break;
    }
    default: {
      Call c;
      c.callee = "f" + std::to_string(pick(rng, 0, 3));
      int argc = pick(rng, 0, 2);
      for (int i = 0; i < argc; ++i) c.args.push_back(gen_expr(rng, depth - 1));
      e->node = std::move(c);
      break;
    }
  }
  return e;
}

inline helium::TypeExprAst gen_type(Rng& rng) {
  helium::TypeExprAst t;
  t.plain = pick(rng, 0, 1) == 1;
  if (pick(rng, 0, 1) == 1) t.vector_len = gen_expr(rng, 1);
  return t;
}

inline helium::StmtPtr gen_stmt(Rng& rng, int depth);

inline std::vector<helium::StmtPtr> gen_body(Rng& rng, int depth, bool with_return) {
  std::vector<helium::StmtPtr> body;
  int len = pick(rng, with_return ? 0 : 1, 2);
  for (int i = 0; i < len; ++i) body.push_back(gen_stmt(rng, depth));
  if (with_return) {
    auto s = std::make_unique<helium::Stmt>();
    s->node = helium::ReturnStmt{gen_expr(rng, 2)};
    body.push_back(std::move(s));
  }
  return body;
}

inline helium::StmtPtr gen_stmt(Rng& rng, int depth) {
  using namespace helium;
  auto s = std::make_unique<Stmt>();
  switch (depth <= 0 ? pick(rng, 0, 3) : pick(rng, 0, 5)) {
    case 0: {
      InputStmt in;
      in.name = "in" + std::to_string(pick(rng, 0, 9));
      in.type = gen_type(rng);
      if (pick(rng, 0, 1)) in.key = "K" + std::to_string(pick(rng, 0, 3));
      if (pick(rng, 0, 1)) in.party = "P" + std::to_string(pick(rng, 0, 3));
      s->node = std::move(in);
      break;
    }
    case 1: {
      OutputStmt out;
      out.name = "out" + std::to_string(pick(rng, 0, 9));
      if (pick(rng, 0, 1)) out.party = "P" + std::to_string(pick(rng, 0, 3));
      if (pick(rng, 0, 1)) out.key = "K" + std::to_string(pick(rng, 0, 3));
      out.expr = gen_expr(rng, 3);
      s->node = std::move(out);
      break;
    }
    case 2: {
      VarDecl d;
      d.name = "v" + std::to_string(pick(rng, 0, 5));
      d.type = gen_type(rng);
      if (pick(rng, 0, 1)) d.init = gen_expr(rng, 3);
      s->node = std::move(d);
      break;
    }
    case 3: {
      s->node = VarAssignment{"v" + std::to_string(pick(rng, 0, 5)), gen_expr(rng, 3)};
      break;
    }
    case 4: {
      ForStmt f;
      f.loop_var = "i" + std::to_string(pick(rng, 0, 2));
      f.iter = gen_expr(rng, 1);
      f.body = gen_body(rng, depth - 1, false);
      s->node = std::move(f);
      break;
    }
    default: {
      FuncDecl f;
      f.name = "f" + std::to_string(pick(rng, 0, 3));
      int argc = pick(rng, 0, 3);
      for (int i = 0; i < argc; ++i) {
        FuncParam p;
        p.name = "p" + std::to_string(i);
        if (pick(rng, 0, 1)) p.type = gen_type(rng);
        f.params.push_back(std::move(p));
      }
      f.body = gen_body(rng, depth - 1, true);
      s->node = std::move(f);
      break;
    }
  }
  return s;
}

inline helium::Ast gen_ast(Rng& rng) {
  helium::Ast ast;
  int len = pick(rng, 1, 8);
  for (int i = 0; i < len; ++i) ast.statements.push_back(gen_stmt(rng, 2));
  return ast;
}

// ---- valid-program generator --------------------------------------------

struct GenInput {
  std::string name;
  std::string party;
  std::string key;  // empty => plain
  int vec_len;      // 0 => scalar
};

struct GenProgram {
  std::string source;
  std::vector<GenInput> inputs;
  int cipher_inputs = 0;
};

// Expression over the declared inputs; `vec` selects vector- or
// scalar-shaped results so shapes always promote cleanly.
inline std::string gen_val_expr(Rng& rng, const GenProgram& p, int depth, bool vec,
                                int vec_len) {
  if (depth <= 0 || pick(rng, 0, 4) == 0) {
    std::vector<const GenInput*> fits;
    for (const auto& in : p.inputs)
      if ((in.vec_len > 0) == vec) fits.push_back(&in);
    if (!fits.empty() && pick(rng, 0, 3) != 0)
      return fits[pick(rng, 0, static_cast<int>(fits.size()) - 1)]->name;
    if (vec)  // no vector atom: broadcast happens via the binary op instead
      return gen_val_expr(rng, p, 0, false, vec_len) + " + " +
             (fits.empty() ? std::to_string(pick(rng, 0, 3)) : fits[0]->name);
    return std::to_string(pick(rng, 0, 3));
  }
  switch (pick(rng, 0, vec ? 5 : 4)) {
    case 0:
      return "(" + gen_val_expr(rng, p, depth - 1, vec, vec_len) + " + " +
             gen_val_expr(rng, p, depth - 1, pick(rng, 0, 1) == 0 && vec, vec_len) + ")";
    case 1:
      return "(" + gen_val_expr(rng, p, depth - 1, vec, vec_len) + " - " +
             gen_val_expr(rng, p, depth - 1, false, vec_len) + ")";
    case 2:
      return "(" + gen_val_expr(rng, p, depth - 1, vec, vec_len) + " * " +
             gen_val_expr(rng, p, depth - 1, false, vec_len) + ")";
    case 3:
      return "(" + gen_val_expr(rng, p, depth - 1, vec, vec_len) + " ** " +
             std::to_string(pick(rng, 1, 3)) + ")";
    case 4:
      return gen_val_expr(rng, p, depth - 1, vec, vec_len);
    default:
      return "(" + gen_val_expr(rng, p, depth - 1, true, vec_len) +
             (pick(rng, 0, 1) ? " << " : " >> ") + std::to_string(pick(rng, 0, vec_len)) +
             ")";
  }
}

inline GenProgram gen_program(Rng& rng) {
  GenProgram p;
  int n_inputs = pick(rng, 1, 6);
  int vec_len = pick(rng, 2, 6);
  int n_keys = pick(rng, 1, 3);
  for (int i = 0; i < n_inputs; ++i) {
    GenInput in;
    in.name = "x" + std::to_string(i);
    in.party = "P" + std::to_string(pick(rng, 0, 2));
    bool plain = pick(rng, 0, 3) == 0;
    // a program needs at least one ciphertext input to be interesting
    if (i == 0) plain = false;
    if (!plain) {
      in.key = "K" + std::to_string(pick(rng, 0, n_keys - 1));
      ++p.cipher_inputs;
    }
    in.vec_len = pick(rng, 0, 1) ? vec_len : 0;
    p.inputs.push_back(in);
  }

  std::ostringstream src;
  for (const auto& in : p.inputs) {
    src << "input " << in.name << ": " << (in.key.empty() ? "plain " : "") << "int";
    if (in.vec_len > 0) src << "[" << in.vec_len << "]";
    if (!in.key.empty()) src << " @" << in.key;
    src << " <= " << in.party << ";\n";
  }

  // every input feeds the first output, so none is dead
  std::string all;
  for (const auto& in : p.inputs) all += (all.empty() ? "" : " + ") + in.name;
  bool any_vec = false;
  for (const auto& in : p.inputs) any_vec |= in.vec_len > 0;

  int n_outputs = pick(rng, 1, 3);
  for (int i = 0; i < n_outputs; ++i) {
    std::string expr = i == 0 ? "(" + all + ") + " + gen_val_expr(rng, p, 3, any_vec, vec_len)
                              : gen_val_expr(rng, p, 3, pick(rng, 0, 1) == 0 && any_vec,
                                             vec_len);
    src << "output r" << i << " => POut @KOut: " << expr << ";\n";
  }
  p.source = src.str();
  return p;
}

inline helium::InputBundle gen_bundle(Rng& rng, const GenProgram& p) {
  helium::InputBundle bundle;
  for (const auto& in : p.inputs) {
    std::vector<std::int64_t> v(in.vec_len > 0 ? in.vec_len : 1);
    for (auto& x : v) x = pick(rng, 0, 1);
    bundle[in.party][in.name] = std::move(v);
  }
  return bundle;
}

}  // namespace fuzz
