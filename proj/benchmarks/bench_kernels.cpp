#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include <sni/sni.hpp>

using namespace sni;

namespace {

ObservationSet random_mask(const Matrix& m, double fraction, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Observation> entries;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (unif(gen) < fraction) entries.push_back({i, j, m(i, j)});
  return ObservationSet(m.rows(), m.cols(), std::move(entries));
}

Matrix planted(Index m, Index n, Index r, std::uint64_t seed) {
  Matrix u = thin_qr(seeded_gaussian(m, r, seed)).q;
  Matrix v = thin_qr(seeded_gaussian(n, r, seed + 1)).q;
  Vector s(r);
  for (Index i = 0; i < r; ++i) s(i) = static_cast<double>(r - i);
  return u * s.asDiagonal() * v.transpose();
}

}  // namespace

static void BM_ThinQr(benchmark::State& state) {
  const Index m = state.range(0), r = 20;
  Matrix k = seeded_gaussian(m, r, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(thin_qr(k));
  }
}
BENCHMARK(BM_ThinQr)->Arg(500)->Arg(2000);

static void BM_SmallSvd(benchmark::State& state) {
  const Index r = state.range(0);
  Matrix s = seeded_gaussian(r, r, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(small_svd(s));
  }
}
BENCHMARK(BM_SmallSvd)->Arg(20)->Arg(100);

static void BM_SniStepDense(benchmark::State& state) {
  const Index m = 500, n = 400, r = 20;
  Matrix target = planted(m, n, r, 3);
  LowRankFactors f = random_factors(m, n, r, 4);
  FullObservationOracle oracle(target);
  oracle.refresh(f);
  for (auto _ : state) {
    Matrix q = oracle.apply(f.v);
    benchmark::DoNotOptimize(sni_step(f, target - assemble(f)));
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_SniStepDense);

// Per-iteration completion work at fixed dims as the support grows; the
// times should scale linearly in the number of observed entries.
static void BM_SparseIteration(benchmark::State& state) {
  const Index m = 400, n = 400, r = 10;
  Matrix target = planted(m, n, r, 5);
  const double fraction = static_cast<double>(state.range(0)) / 100.0;
  ObservationSet obs = random_mask(target, fraction, 6);
  SparseResidualOracle oracle(obs);
  LowRankFactors f = random_factors(m, n, r, 7);
  for (auto _ : state) {
    oracle.refresh(f);
    Matrix q = oracle.apply(f.v);
    Matrix l = oracle.apply_adjoint(f.u);
    benchmark::DoNotOptimize(q);
    benchmark::DoNotOptimize(l);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(obs.size()));
}
BENCHMARK(BM_SparseIteration)->Arg(10)->Arg(20)->Arg(40)->Arg(80);

BENCHMARK_MAIN();
