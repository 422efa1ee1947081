#include <benchmark/benchmark.h>

#include <random>

#include "twistrank/certify.hpp"
#include "twistrank/densitylab.hpp"
#include "twistrank/factor.hpp"

using namespace twistrank;

namespace {

void BM_SquarefreePart64(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<Integer> xs;
  for (int i = 0; i < 256; ++i) xs.emplace_back(static_cast<long>(rng() >> 1));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(squarefree_part(xs[i++ % xs.size()]));
}
BENCHMARK(BM_SquarefreePart64);

void BM_SquareClass(benchmark::State& state) {
  const TwistFamily fam = build(make_spec("thm4_5"));
  const RatFunc r = RatFunc(fam.g) * fam.points[2].x * fam.points[2].x;
  for (auto _ : state) benchmark::DoNotOptimize(square_class(r));
}
BENCHMARK(BM_SquareClass);

void BM_SieveAt(benchmark::State& state) {
  const TwistFamily fam = build(make_spec("thm4_5"));
  const CertifyOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(sieve_at(fam, 2, opt));
}
BENCHMARK(BM_SieveAt)->Unit(benchmark::kMillisecond);

void BM_EnumerateS(benchmark::State& state) {
  const HomogForm F = family_form(build(make_spec("thm4_5")));
  Integer cap;
  mpz_ui_pow_ui(cap.get_mpz_t(), 10, 100);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_S(F, state.range(0), 1, cap));
}
BENCHMARK(BM_EnumerateS)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
