#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "helium/runtime.hpp"

namespace helium {

// HEDSL source for the tumor-recurrence family: n datasets of (a_i scalar,
// b_i vector[vec_len]) spread evenly over k keys, two outputs (R, n) under a
// distinct output key (or the shared input key when shared_output_key).
std::string tumor_source(int n, int k, int vec_len = 1000,
                         bool shared_output_key = false);

struct BenchRow {
  int n = 0;
  int k = 0;
  int p_naive = 0;
  int p_opt = 0;
  double reduction_pct = 0.0;
  double cost_naive = 0.0;
  double cost_opt = 0.0;
  double cost_nopre = 0.0;
  std::uint64_t seed = 0;
};

// Compiles and evaluates the tumor family for every (n, ratio) pair with
// seeded random bit inputs; each ratio must divide each n.
std::vector<BenchRow> sweep_bench(const std::vector<int>& n_list,
                                  const std::vector<int>& ratio_list,
                                  const CostModel& cost = {},
                                  std::uint64_t seed = 42, int vec_len = 16);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace helium
