#include <benchmark/benchmark.h>

#include "capamp/capamp.hpp"

using namespace capamp;

namespace {

ComplexMatrix sample_state(Index n) {
  ComplexMatrix g = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = Complex(std::sin(1.0 + i * 7 + j), std::cos(2.0 + i + 3 * j));
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

void BM_EigHermitian(benchmark::State& state) {
  const ComplexMatrix m = sample_state(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(m));
}
BENCHMARK(BM_EigHermitian)->Arg(16)->Arg(64)->Arg(256);

void BM_PartialTrace(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const ComplexMatrix m = sample_state(Index(d) * d * d);
  const SubsystemDims dims({d, d, d});
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(m, dims, IndexSet{1}));
}
BENCHMARK(BM_PartialTrace)->Arg(2)->Arg(4)->Arg(6);

void BM_CoherentInfoPrivateChannel(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Channel ch = private_channel(private_channel_special_q(d), d);
  const DensityOperator rho = DensityOperator::maximally_mixed(ch.in_dims());
  for (auto _ : state) benchmark::DoNotOptimize(coherent_info(ch, rho));
}
BENCHMARK(BM_CoherentInfoPrivateChannel)->Arg(2)->Arg(3);

void BM_DepolarizingSweep(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(sweep(MarginKind::Depolarizing, 5, static_cast<int>(state.range(0)), 1));
}
BENCHMARK(BM_DepolarizingSweep)->Arg(50)->Arg(200);

}  // namespace
BENCHMARK_MAIN();
