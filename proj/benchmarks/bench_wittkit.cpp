#include <benchmark/benchmark.h>

#include "wittkit/check.hpp"
#include "wittkit/etale.hpp"
#include "wittkit/expand.hpp"
#include "wittkit/gauss.hpp"

using namespace wittkit;

namespace {

WittVector sample_vector(unsigned p, unsigned len, std::uint64_t seed) {
  check::Rng rng(seed);
  auto ctx = PolyRingCtx::make(CoeffRing::fp(p), 2);
  return check::random_witt(rng, ctx, len, 4, 2);
}

void BM_WittMul(benchmark::State& state) {
  unsigned p = static_cast<unsigned>(state.range(0));
  unsigned len = static_cast<unsigned>(state.range(1));
  WittVector x = sample_vector(p, len, 1);
  WittVector y = sample_vector(p, len, 2);
  for (auto _ : state) benchmark::DoNotOptimize(witt_mul(x, y));
}
BENCHMARK(BM_WittMul)->Args({2, 3})->Args({2, 5})->Args({3, 4})->Args({5, 3});

void BM_WittAdd(benchmark::State& state) {
  unsigned p = static_cast<unsigned>(state.range(0));
  unsigned len = static_cast<unsigned>(state.range(1));
  WittVector x = sample_vector(p, len, 3);
  WittVector y = sample_vector(p, len, 4);
  for (auto _ : state) benchmark::DoNotOptimize(witt_add(x, y));
}
BENCHMARK(BM_WittAdd)->Args({2, 5})->Args({3, 4})->Args({5, 3});

void BM_GaussNorm(benchmark::State& state) {
  WittVector x = sample_vector(2, 5, 5);
  auto spec = ValuationSpec::weighted_degree({Rat(1), Rat(1)});
  Rat eps(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(gauss_norm(x, *spec, eps));
}
BENCHMARK(BM_GaussNorm);

void BM_TeichExpand(benchmark::State& state) {
  WittVector x = sample_vector(2, static_cast<unsigned>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(teich_expand(x));
}
BENCHMARK(BM_TeichExpand)->Arg(3)->Arg(4);

void BM_HenselLift(benchmark::State& state) {
  auto ctx = PolyRingCtx::make(CoeffRing::fp(2), 1);
  unsigned len = 4;
  MultiPoly a = MultiPoly::parse(ctx->ring, 1, "T1");
  WittVector one = WittVector::one(ctx, len);
  std::vector<WittVector> coeffs = {
      witt_neg(teichmuller(ctx, len, MultiPoly::parse(ctx->ring, 1, "T1^2 + T1"))),
      witt_neg(one), one};
  for (auto _ : state) benchmark::DoNotOptimize(hensel_lift(coeffs, a));
}
BENCHMARK(BM_HenselLift);

}  // namespace

BENCHMARK_MAIN();
