#include <doctest.h>

#include "helium/bench.hpp"
#include "helium/driver.hpp"
#include "helium/parser.hpp"
#include "helium/runtime.hpp"

using namespace helium;

TEST_CASE("tumor source compiles and matches its oracle") {
  std::string src = tumor_source(4, 2, /*vec_len=*/8);
  auto parsed = parse_source(src);
  REQUIRE(parsed.errors.empty());
  auto art = compile_source(src);
  CHECK(art.circuit.inputs.size() == 8);  // a_i scalar + b_i vector per dataset
  CHECK(art.circuit.outputs.size() == 2);

  InputBundle in;
  for (int i = 0; i < 4; ++i) {
    in["Party" + std::to_string(i)]["a" + std::to_string(i)] = {i % 2};
    std::vector<std::int64_t> v(8);
    for (int j = 0; j < 8; ++j) v[j] = (i + j) % 2;
    in["Party" + std::to_string(i)]["b" + std::to_string(i)] = v;
  }
  auto expected = oracle_evaluate(parsed.ast, in);
  auto got = evaluate(art.circuit, in);
  CHECK(got.outputs.at("R").payload == expected.at("R"));
  CHECK(got.outputs.at("n").payload == expected.at("n"));
}

TEST_CASE("pre counts over the key-count axis") {
  // one key per dataset: nothing to share, one PRE per ciphertext input
  auto full = compile_source(tumor_source(4, 4, 8));
  CHECK(full.circuit.metrics.pre_count == 8);
  // two datasets per key: half the re-encryptions
  auto half = compile_source(tumor_source(4, 2, 8));
  CHECK(half.circuit.metrics.pre_count == 4);
  // single shared key: only the two outputs need re-encryption
  auto one = compile_source(tumor_source(4, 1, 8));
  CHECK(one.circuit.metrics.pre_count == 2);

  CompileOptions naive;
  naive.no_opt = true;
  CHECK(compile_source(tumor_source(4, 2, 8), naive).circuit.metrics.pre_count == 8);
}

TEST_CASE("sweep reduction percentages") {
  auto rows = sweep_bench({8, 16}, {1, 2, 4, 8}, CostModel{}, 7, 8);
  REQUIRE(rows.size() == 8);
  for (const auto& row : rows) {
    int ratio = row.n / row.k;
    CHECK(row.p_naive == 2 * row.n);
    CHECK(row.p_opt == 2 * row.k);
    CHECK(row.reduction_pct == doctest::Approx(100.0 * (1.0 - 1.0 / ratio)));
    CHECK(row.cost_opt <= row.cost_naive + 1e-9);
    CHECK(row.cost_nopre <= row.cost_opt);
  }
}

TEST_CASE("csv shape") {
  auto csv = bench_csv(sweep_bench({4}, {2}, CostModel{}, 1, 4));
  CHECK(csv.rfind("n,k,p_naive,p_opt,reduction_pct,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}
