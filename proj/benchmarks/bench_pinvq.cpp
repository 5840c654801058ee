#include <benchmark/benchmark.h>

#include <random>

#include "pinvq/pinvq.hpp"

using namespace pinvq;

namespace {

// Dense n×n matrix of rank r with small rational entries, fixed seed.
QMatrix random_matrix(std::size_t n, std::size_t r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<unsigned long> den(1, 3);
  QMatrix f(n, r);
  QMatrix g(r, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      f(i, j) = Rat(make_rat(num(rng), den(rng)));
      g(j, i) = Rat(make_rat(num(rng), den(rng)));
    }
  }
  return f * g;
}

void BM_PinvExactFullRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const QMatrix a = random_matrix(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(pinv_exact(a));
}
BENCHMARK(BM_PinvExactFullRank)->DenseRange(2, 8, 2);

void BM_PinvExactRankDeficient(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const QMatrix a = random_matrix(n, n / 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(pinv_exact(a));
}
BENCHMARK(BM_PinvExactRankDeficient)->DenseRange(2, 8, 2);

// Certified iteration on A_ε with ε = 2^{-e}: λ_min(A^H A) = ε², so the
// iteration count grows with e.
void BM_PinvCertifiedFamily(benchmark::State& state) {
  const long e = state.range(0);
  const auto N = static_cast<std::size_t>(state.range(1));
  const Rat eps = pow2(-e);
  const QMatrix a = make_family_point(3, 2, eps).a;
  const Certificate cert{2, Rat(eps * eps)};
  std::size_t iterations = 0;
  for (auto _ : state) {
    const auto res = pinv_certified(a, cert, N);
    iterations = res.trace.stopped_at;
    benchmark::DoNotOptimize(res.ball.radius);
  }
  state.counters["iterations"] = static_cast<double>(iterations);
}
BENCHMARK(BM_PinvCertifiedFamily)
    ->ArgsProduct({{1, 4, 8}, {10, 30, 50}})
    ->Unit(benchmark::kMillisecond);

void BM_DerivedKappa(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const QMatrix a = make_family_point(2, 2, Rat(1, 2)).a;
  const Certificate cert{2, Rat(1, 4)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(derived_certified(Derived::kappa, a, std::nullopt, cert, N));
  }
}
BENCHMARK(BM_DerivedKappa)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_AdversaryGame(benchmark::State& state) {
  const auto k = state.range(0);
  const std::string name = "rounded-exact:" + std::to_string(k);
  const auto setup = make_game_setup(2, 2, Target::g_inv, 64, pow2(-22));
  for (auto _ : state) {
    auto alg = make_algorithm(name);
    benchmark::DoNotOptimize(run_adversary(*alg, setup).achieved_error);
  }
}
BENCHMARK(BM_AdversaryGame)->Arg(4)->Arg(16)->Arg(32);

void BM_CRealSqrt(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const CReal x = sqrt(creal_from_rat(Rat(2)));
    benchmark::DoNotOptimize(x.approx(N));
  }
}
BENCHMARK(BM_CRealSqrt)->Arg(64)->Arg(1024)->Arg(8192);

}  // namespace

BENCHMARK_MAIN();
