#include <doctest.h>

#include "helium/graph.hpp"

using namespace helium;

namespace {

ValueType ct() { return ValueType::scalar(Secrecy::Cipher); }

}  // namespace

TEST_CASE("use-def bookkeeping") {
  CompGraph g;
  NodeId a = g.add_input("a", "P", "K", ct());
  NodeId b = g.add_input("b", "P", "K", ct());
  NodeId m = g.add_op(OpKind::Mul, a, b);
  NodeId s = g.add_op(OpKind::Add, m, m);
  CHECK(g.node(a).uses == std::vector<NodeId>{m});
  CHECK(g.node(m).uses == std::vector<NodeId>{s, s});  // multiset
  g.verify();

  NodeId c = g.add_const(7);
  g.replace_uses(m, c);
  CHECK(g.node(s).operands == std::vector<NodeId>{c, c});
  CHECK(g.node(m).uses.empty());
  g.verify();

  CHECK(g.drains() == std::vector<NodeId>{m, s});
  g.remove_node(m);
  CHECK_FALSE(g.contains(m));
  CHECK(g.node(a).uses.empty());
  g.verify();
}

TEST_CASE("rewrite_operand touches only the named user") {
  CompGraph g;
  NodeId a = g.add_input("a", "P", "K", ct());
  NodeId u1 = g.add_op(OpKind::Add, a, a);
  NodeId u2 = g.add_op(OpKind::Add, a, a);
  NodeId c = g.add_const(1);
  g.rewrite_operand(u1, a, c);
  CHECK(g.node(u1).operands == std::vector<NodeId>{c, c});
  CHECK(g.node(u2).operands == std::vector<NodeId>{a, a});
  g.verify();
}

TEST_CASE("topo order is deterministic and respects edges") {
  CompGraph g;
  NodeId a = g.add_input("a", "P", "K", ct());
  NodeId b = g.add_input("b", "P", "K", ct());
  NodeId m = g.add_op(OpKind::Mul, a, b);
  NodeId o = g.add_output("o", "Q", "K", m);
  auto order = g.topo_order();
  CHECK(order == std::vector<NodeId>{a, b, m, o});
}

TEST_CASE("multiplicative depth counts only ct-ct multiplications") {
  CompGraph g;
  NodeId a = g.add_input("a", "P", "K", ct());
  NodeId b = g.add_input("b", "P", "K", ct());
  NodeId c = g.add_const(3);
  NodeId m1 = g.add_op(OpKind::Mul, a, b);   // depth 1
  NodeId m2 = g.add_op(OpKind::Mul, m1, c);  // ct-pt: free
  NodeId m3 = g.add_op(OpKind::Mul, m2, a);  // depth 2
  g.add_output("o", "Q", "K", m3);
  CHECK(g.multiplicative_depth() == 2);
}

TEST_CASE("balanced product of eight leaves has depth three") {
  CompGraph g;
  std::vector<NodeId> level;
  for (int i = 0; i < 8; ++i) level.push_back(g.add_input("a" + std::to_string(i), "P", "K", ct()));
  while (level.size() > 1) {
    std::vector<NodeId> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2)
      next.push_back(g.add_op(OpKind::Mul, level[i], level[i + 1]));
    level = next;
  }
  g.add_output("o", "Q", "K", level[0]);
  CHECK(g.multiplicative_depth() == 3);
  CHECK(g.op_depth(OpKind::Mul) == 3);
}

TEST_CASE("pow depth is the repeated-squaring depth") {
  CompGraph g;
  NodeId a = g.add_input("a", "P", "K", ct());
  NodeId e = g.add_const(6);
  NodeId p = g.add_op(OpKind::Pow, a, e);
  g.add_output("o", "Q", "K", p);
  CHECK(g.multiplicative_depth() == 3);  // ceil(log2 6)
}

TEST_CASE("verify catches corruption") {
  CompGraph g;
  NodeId a = g.add_input("a", "P", "K", ct());
  NodeId b = g.add_op(OpKind::Add, a, a);
  g.add_output("o", "Q", "K", b);
  g.verify();
  g.node(b).operands.pop_back();  // break arity
  CHECK_THROWS_AS(g.verify(), CompileError);
}
