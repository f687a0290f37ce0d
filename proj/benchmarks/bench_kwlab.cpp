#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "kwlab/bilinear.hpp"
#include "kwlab/energies.hpp"
#include "kwlab/multilinear.hpp"
#include "kwlab/solver.hpp"
#include "kwlab/spacetime.hpp"
#include "kwlab/symbols.hpp"

using namespace kwlab;

namespace {

SpectralField random_field(std::size_t m, double length, int beta, std::uint64_t seed) {
  GridSpec g;
  g.modes = m;
  g.length = length;
  g.beta = beta;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  SpectralField u(g);
  for (int k = 1; k <= g.retained(); ++k) {
    u.at(k) = cplx(n(rng), n(rng)) * std::exp(-0.01 * k * k);
    u.at(-k) = std::conj(u.at(k));
  }
  return u;
}

void BM_Nonlinearity(benchmark::State& state) {
  const auto u = random_field(static_cast<std::size_t>(state.range(0)), 2 * std::numbers::pi, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(nonlinearity(u, Dealias::GalerkinConsistent));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Nonlinearity)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_StepperAdvance(benchmark::State& state) {
  auto u = random_field(static_cast<std::size_t>(state.range(0)), 2 * std::numbers::pi, 1, 2);
  for (auto& c : u.coeffs) c *= 1e-3;
  SolverConfig cfg;
  cfg.dt = 1e-5;
  Stepper st(u.grid, cfg);
  for (auto _ : state) st.advance(u, cfg.dt);
}
BENCHMARK(BM_StepperAdvance)->RangeMultiplier(4)->Range(64, 1024);

void BM_LambdaPlan(benchmark::State& state) {
  const auto u = random_field(static_cast<std::size_t>(state.range(0)), 16 * std::numbers::pi, 1, 3);
  SymbolContext ctx;
  ctx.im = IMultiplier{1.0, -38.0 / 21.0};
  ctx.beta = 1;
  ctx.policy = ResonancePolicy::ZeroAndCount;
  const SymbolSet set(ctx, u.grid.dxi(), 5 * u.grid.retained());
  const LambdaPlan plan(set.symbol("m4"), u.grid, true);
  for (auto _ : state) benchmark::DoNotOptimize(plan.evaluate(u));
}
BENCHMARK(BM_LambdaPlan)->Arg(16)->Arg(32);

void BM_ProductCoefficients(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  GridSpec g;
  g.modes = m;
  SpaceTimeField f(g, 1.0, m, Taper::None);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 1.0);
  for (auto& c : f.coeffs) c = cplx(n(rng), n(rng));
  for (auto _ : state) benchmark::DoNotOptimize(product_coefficients(f, f));
}
BENCHMARK(BM_ProductCoefficients)->RangeMultiplier(2)->Range(16, 128);

void BM_WNormDense(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  GridSpec g;
  g.modes = m;
  SpaceTimeField f(g, 1.0, m, Taper::None);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  for (auto& c : f.coeffs) c = cplx(n(rng), n(rng));
  NormSpec spec;
  spec.s = -38.0 / 21.0;
  for (auto _ : state) benchmark::DoNotOptimize(norm(f, spec));
}
BENCHMARK(BM_WNormDense)->RangeMultiplier(2)->Range(32, 256);

void BM_HighHighLowRatio(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(high_high_low_ratio(static_cast<double>(state.range(0)), -38.0 / 21.0));
}
BENCHMARK(BM_HighHighLowRatio)->Arg(8)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
