#include <doctest.h>

#include <map>

#include "helium/elaborate.hpp"
#include "helium/parser.hpp"

using namespace helium;

namespace {

CompGraph elab(const std::string& src) {
  auto r = parse_source(src);
  REQUIRE(r.errors.empty());
  CompGraph g = elaborate(r.ast);
  g.verify();
  return g;
}

std::map<OpKind, int> kind_counts(const CompGraph& g) {
  std::map<OpKind, int> counts;
  for (const auto& [id, n] : g.nodes()) counts[n.kind]++;
  return counts;
}

}  // namespace

TEST_CASE("two party dot product elaborates to the expected node mix") {
  auto g = elab(
      "input a1: int @Key1 <= Party1;\n"
      "input a2: int @Key1 <= Party1;\n"
      "input a3: int @Key1 <= Party1;\n"
      "input b1: int @Key2 <= Party2;\n"
      "input b2: int @Key2 <= Party2;\n"
      "input b3: int @Key2 <= Party2;\n"
      "var s: int = a1 * b1 + a2 * b2 + a3 * b3;\n"
      "output dot => POut @KOut: s;\n"
      "output copy => POut @KOut: s;\n");
  auto counts = kind_counts(g);
  CHECK(counts[OpKind::Input] == 6);
  CHECK(counts[OpKind::Mul] == 3);
  CHECK(counts[OpKind::Add] == 2);
  CHECK(counts[OpKind::Output] == 2);
  // both outputs share the same s node
  CHECK(g.node(g.outputs()[0]).operands == g.node(g.outputs()[1]).operands);
}

TEST_CASE("input defaults") {
  auto g = elab("input a: int;\noutput o: a;\n");
  const auto& in = g.node(g.inputs()[0]);
  CHECK(in.party == "Party_a");
  CHECK(in.key == "Key_Party_a");
  const auto& out = g.node(g.outputs()[0]);
  CHECK(out.party == "Party_Out");
  CHECK(out.key == "Key_Out");
}

TEST_CASE("plain input carries no key and rejects one") {
  auto g = elab("input p: plain int;\ninput c: int @K;\noutput o: p * c;\n");
  CHECK_FALSE(g.node(g.inputs()[0]).key.has_value());
  CHECK(g.node(g.inputs()[0]).vtype.secrecy == Secrecy::Plain);
  CHECK_THROWS_AS(elab("input p: plain int @K;\noutput o: p;\n"), CompileError);
}

TEST_CASE("size intrinsic becomes a const") {
  auto g = elab(
      "input v: int[1000] @K <= P;\n"
      "input unused: int @K2 <= P2;\n"
      "output n => POut @KOut: size(v);\n");
  // size(v) is a compile-time constant; v itself ends up unused
  const auto& out_operand = g.node(g.node(g.outputs()[0]).operands[0]);
  CHECK(out_operand.kind == OpKind::Const);
  CHECK(out_operand.value == std::vector<std::int64_t>{1000});
}

TEST_CASE("loop unrolls to one rotation per slot") {
  auto g = elab(
      "input v: int[4] @K <= P;\n"
      "var s: int[4] = v * 0;\n"
      "for (e : v) { s = s + e; }\n"
      "output total => POut @KOut: s;\n");
  auto counts = kind_counts(g);
  // slot 0 uses v directly; slots 1..3 go through RotL
  CHECK(counts[OpKind::RotL] == 3);
  CHECK(counts[OpKind::Add] == 4);
}

TEST_CASE("pow lowers by repeated squaring") {
  auto g = elab("input a: int @K <= P;\noutput o => Q @KO: a ** 5;\n");
  auto counts = kind_counts(g);
  CHECK(counts.count(OpKind::Pow) == 0);
  CHECK(counts[OpKind::Mul] == 3);  // a^2, a^4, a^4 * a
  CHECK(g.multiplicative_depth() == 3);
}

TEST_CASE("functions monomorphize per argument types") {
  auto g = elab(
      "input a: int @K <= P;\n"
      "input v: int[4] @K <= P;\n"
      "fun sq(x) { return x * x; }\n"
      "output o1 => Q @KO: sq(a);\n"
      "output o2 => Q @KO: sq(v);\n"
      "output o3 => Q @KO: sq(a);\n");
  auto counts = kind_counts(g);
  CHECK(counts[OpKind::Mul] == 3);  // one per call site, scalar and vector both ok
}

TEST_CASE("recursion is rejected") {
  CHECK_THROWS_AS(elab("input a: int @K <= P;\n"
                       "fun f(x) { return f(x); }\n"
                       "output o: f(a);\n"),
                  CompileError);
}

TEST_CASE("type errors") {
  // mismatched vector lengths
  CHECK_THROWS_AS(elab("input a: int[8] @K <= P;\ninput b: int[9] @K <= P;\n"
                       "output o: a + b;\n"),
                  CompileError);
  // non-const exponent
  CHECK_THROWS_AS(elab("input a: int @K <= P;\ninput e: int @K <= P;\n"
                       "output o: a ** e;\n"),
                  CompileError);
  // rotation of a scalar
  CHECK_THROWS_AS(elab("input a: int @K <= P;\noutput o: a << 1;\n"), CompileError);
  // rotation by a ciphertext amount
  CHECK_THROWS_AS(elab("input v: int[4] @K <= P;\ninput r: int @K <= P;\n"
                       "output o: v << r;\n"),
                  CompileError);
}

TEST_CASE("name errors") {
  CHECK_THROWS_AS(elab("output o: nosuch;\n"), CompileError);
  CHECK_THROWS_AS(elab("input a: int @K <= P;\noutput o: f(a);\n"), CompileError);
  // duplicate output name
  CHECK_THROWS_AS(elab("input a: int @K <= P;\noutput o: a;\noutput o: a;\n"), CompileError);
}

TEST_CASE("every node is reachable or an input after elaboration") {
  auto g = elab(
      "input a: int @K <= P;\n"
      "var t: int = a + 1;\n"
      "var u: int = t * t;\n"
      "output o => Q @KO: u;\n");
  for (NodeId id : g.drains()) {
    CHECK(g.node(id).kind == OpKind::Output);
  }
}
