// Serial reference kernels against their OpenMP counterparts.  Inputs are
// valid automorphisms so the early-exit paths never fire and both variants
// scan the full domain.

#include <random>

#include <benchmark/benchmark.h>

#include "padic/automorph.hpp"
#include "padic/kernels.hpp"
#include "padic/lipschitz.hpp"

using namespace padic;
namespace sk = padic::kernels::serial;
namespace pk = padic::kernels::parallel;

namespace {

// p = 3, K = range(0): tables of 3^K entries.
LipschitzFn sample_fn(unsigned K, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  return random_lipschitz(PrimeContext(3, K), rng);
}

template <bool Parallel>
void BM_TowerCheck(benchmark::State& state) {
  const auto f = sample_fn(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(pk::first_tower_violation(f.table(), f.ring()));
    else
      benchmark::DoNotOptimize(sk::first_tower_violation(f.table(), f.ring()));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}

template <bool Parallel>
void BM_Bijective(benchmark::State& state) {
  const auto f = sample_fn(static_cast<unsigned>(state.range(0)));
  const unsigned K = f.ctx().K();
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(pk::is_bijective_mod(f.table(), f.ring(), K));
    else
      benchmark::DoNotOptimize(sk::is_bijective_mod(f.table(), f.ring(), K));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}

template <bool Parallel>
void BM_Compose(benchmark::State& state) {
  const auto K = static_cast<unsigned>(state.range(0));
  const auto f = sample_fn(K, 1), g = sample_fn(K, 2);
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(pk::compose(f.table(), g.table()));
    else
      benchmark::DoNotOptimize(sk::compose(f.table(), g.table()));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}

// Exhaustive XOR-homomorphism check of a XOR automorphism: p^(2K) pairs.
template <bool Parallel>
void BM_HomExhaustive(benchmark::State& state) {
  const auto K = static_cast<unsigned>(state.range(0));
  const PrimeContext ctx(3, K);
  XorSpec spec;
  for (unsigned k = 0; k < K; ++k) spec.alpha.emplace_back(k + 1, 1);
  const auto f = realize(spec, ctx);
  const ResidueOp op(OpKind::xor_op(), f.ring());
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(pk::first_hom_failure(f.table(), op));
    else
      benchmark::DoNotOptimize(sk::first_hom_failure(f.table(), op));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size() * f.size()));
}

void BM_RealizeMul(benchmark::State& state) {
  const PrimeContext ctx(5, static_cast<unsigned>(state.range(0)));
  const MulSpec m{3, PadicInt::from_integer(ctx, 7), PadicInt::from_integer(ctx, 13)};
  for (auto _ : state) benchmark::DoNotOptimize(realize(m, ctx));
}

}  // namespace

BENCHMARK(BM_TowerCheck<false>)->Name("tower_check/serial")->Arg(8)->Arg(12);
BENCHMARK(BM_TowerCheck<true>)->Name("tower_check/parallel")->Arg(8)->Arg(12);
BENCHMARK(BM_Bijective<false>)->Name("bijective/serial")->Arg(8)->Arg(12);
BENCHMARK(BM_Bijective<true>)->Name("bijective/parallel")->Arg(8)->Arg(12);
BENCHMARK(BM_Compose<false>)->Name("compose/serial")->Arg(8)->Arg(12);
BENCHMARK(BM_Compose<true>)->Name("compose/parallel")->Arg(8)->Arg(12);
BENCHMARK(BM_HomExhaustive<false>)->Name("hom_exhaustive/serial")->Arg(4)->Arg(6);
BENCHMARK(BM_HomExhaustive<true>)->Name("hom_exhaustive/parallel")->Arg(4)->Arg(6);
BENCHMARK(BM_RealizeMul)->Name("realize_mul")->Arg(3)->Arg(5);

BENCHMARK_MAIN();
