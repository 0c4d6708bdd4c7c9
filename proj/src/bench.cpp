#include <random>
#include <sstream>

#include "helium/bench.hpp"
#include "helium/driver.hpp"

namespace helium {

std::string tumor_source(int n, int k, int vec_len, bool shared_output_key) {
  if (n < 1 || k < 1 || k > n)
    throw CompileError(ErrorKind::Config, "tumor family requires 1 <= k <= n");
  std::ostringstream src;
  for (int i = 0; i < n; ++i) {
    int key = i % k;  // datasets spread evenly over k keys
    src << "input a" << i << ": int @Key" << key << " <= Party" << i << ";\n";
    src << "input b" << i << ": int[" << vec_len << "] @Key" << key << " <= Party" << i
        << ";\n";
  }
  std::string out_key = shared_output_key ? "Key0" : "Key_Out";
  src << "output R => Party_Out @" << out_key << ": ";
  for (int i = 0; i < n; ++i) src << (i ? " + " : "") << "a" << i << "*b" << i;
  src << ";\noutput n => Party_Out @" << out_key << ": ";
  for (int i = 0; i < n; ++i) src << (i ? " + " : "") << "b" << i;
  src << ";\n";
  return src.str();
}

namespace {

InputBundle random_bits(const Circuit& c, std::mt19937_64& rng) {
  InputBundle bundle;
  std::bernoulli_distribution bit(0.5);
  for (const auto& in : c.inputs) {
    std::vector<std::int64_t> v(in.shape);
    for (auto& x : v) x = bit(rng) ? 1 : 0;
    bundle[in.party][in.name] = std::move(v);
  }
  return bundle;
}

}  // namespace

std::vector<BenchRow> sweep_bench(const std::vector<int>& n_list,
                                  const std::vector<int>& ratio_list, const CostModel& cost,
                                  std::uint64_t seed, int vec_len) {
  std::vector<BenchRow> rows;
  for (int n : n_list) {
    for (int ratio : ratio_list) {
      if (ratio < 1 || n % ratio != 0)
        throw CompileError(ErrorKind::Config,
                           "ratio " + std::to_string(ratio) + " does not divide n = " +
                               std::to_string(n));
      int k = n / ratio;
      BenchRow row;
      row.n = n;
      row.k = k;
      row.seed = seed;

      CompileOptions opt;
      auto optimized = compile_source(tumor_source(n, k, vec_len), opt);
      CompileOptions naive;
      naive.no_opt = true;
      auto baseline = compile_source(tumor_source(n, k, vec_len), naive);
      // No-PRE reference: inputs pre-shared under one key, outputs under it too.
      auto nopre = compile_source(tumor_source(n, 1, vec_len, /*shared_output_key=*/true), opt);

      row.p_opt = optimized.circuit.metrics.pre_count;
      row.p_naive = baseline.circuit.metrics.pre_count;
      row.reduction_pct =
          row.p_naive == 0 ? 0.0 : 100.0 * (1.0 - static_cast<double>(row.p_opt) / row.p_naive);

      std::mt19937_64 rng(seed);
      InputBundle inputs = random_bits(optimized.circuit, rng);
      row.cost_opt = evaluate(optimized.circuit, inputs, cost).total_cost;
      row.cost_naive = evaluate(baseline.circuit, inputs, cost).total_cost;
      row.cost_nopre = evaluate(nopre.circuit, inputs, cost).total_cost;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "n,k,p_naive,p_opt,reduction_pct,cost_naive,cost_opt,cost_nopre,seed\n";
  for (const auto& r : rows) {
    os << r.n << "," << r.k << "," << r.p_naive << "," << r.p_opt << "," << r.reduction_pct
       << "," << r.cost_naive << "," << r.cost_opt << "," << r.cost_nopre << "," << r.seed
       << "\n";
  }
  return os.str();
}

}  // namespace helium
