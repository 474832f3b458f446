// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "r2r/coupled_operator.hpp"
#include "r2r/simulate.hpp"
#include "r2r/sweep.hpp"

namespace {

r2r::DelayChain poisson_chain(double p_nm, int tau_p) {
  r2r::DelayDistribution d = r2r::poisson_etas(1.0);
  d.p_nm = p_nm;
  return r2r::build_transition(d, tau_p);
}

r2r::SweepRecipe chain_recipe() {
  r2r::SweepRecipe r;
  r.kind = r2r::ControllerKind::ewma2;
  r.chain = poisson_chain(0.3, 5);
  return r;
}

const std::vector<double> kXi = r2r::make_axis(0.05, 4.0, 0.05);
const std::vector<double> kOmega = r2r::make_axis(0.025, 1.0, 0.025);

void BM_SweepParallel(benchmark::State& state) {
  const auto recipe = chain_recipe();
  for (auto _ : state) benchmark::DoNotOptimize(r2r::sweep(recipe, kXi, kOmega));
}
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

void BM_SweepSerial(benchmark::State& state) {
  const auto recipe = chain_recipe();
  for (auto _ : state) benchmark::DoNotOptimize(r2r::sweep_serial(recipe, kXi, kOmega));
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

r2r::CoupledOperator make_operator(int tau_p) {
  const auto c = r2r::ControllerSpec::from_mismatch(r2r::ControllerKind::ewma2, 0.4, 1.5);
  return r2r::CoupledOperator(r2r::build_jump_system(c, poisson_chain(0.3, tau_p)));
}

void BM_OperatorApply(benchmark::State& state) {
  const auto op = make_operator(static_cast<int>(state.range(0)));
  const auto q = op.identity();
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(q));
}
BENCHMARK(BM_OperatorApply)->Arg(4)->Arg(8)->Arg(15)->Unit(benchmark::kMicrosecond);

void BM_OperatorApplyReference(benchmark::State& state) {
  const auto op = make_operator(static_cast<int>(state.range(0)));
  const auto q = op.identity();
  for (auto _ : state) benchmark::DoNotOptimize(op.apply_reference(q));
}
BENCHMARK(BM_OperatorApplyReference)->Arg(4)->Arg(8)->Arg(15)->Unit(benchmark::kMicrosecond);

std::vector<std::uint64_t> batch_seeds() {
  std::vector<std::uint64_t> s;
  for (std::uint64_t k = 1; k <= 16; ++k) s.push_back(k);
  return s;
}

void BM_EstimateBatch(benchmark::State& state) {
  r2r::DelayDistribution d = r2r::poisson_etas(1.0);
  d.p_nm = 0.3;
  const auto seeds = batch_seeds();
  for (auto _ : state) benchmark::DoNotOptimize(r2r::estimate_batch(d, 5, 50000, seeds));
}
BENCHMARK(BM_EstimateBatch)->Unit(benchmark::kMillisecond);

void BM_EstimateBatchSerial(benchmark::State& state) {
  r2r::DelayDistribution d = r2r::poisson_etas(1.0);
  d.p_nm = 0.3;
  const auto seeds = batch_seeds();
  for (auto _ : state) benchmark::DoNotOptimize(r2r::estimate_batch_serial(d, 5, 50000, seeds));
}
BENCHMARK(BM_EstimateBatchSerial)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
