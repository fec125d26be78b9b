// Serial reference kernels against the OpenMP versions on grid-sized arrays.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ncqm/kernels.hpp"

namespace {

using ncqm::kernels::cplx;
namespace serial = ncqm::kernels::serial;
namespace omp = ncqm::kernels::omp;

struct Data {
  std::vector<cplx> f, d1, d2, out;
  std::vector<double> field;
  explicit Data(int n) : f(n), d1(n), d2(n), out(n), field(n) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    for (int i = 0; i < n; ++i) {
      f[i] = {nd(rng), nd(rng)};
      d1[i] = {nd(rng), nd(rng)};
      d2[i] = {nd(rng), nd(rng)};
      field[i] = nd(rng);
    }
  }
};

template <bool Parallel>
void BM_combine(benchmark::State& st) {
  Data d(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    if constexpr (Parallel)
      omp::combine(d.out, d.f, d.field, d.d1, {0.0, 0.3}, d.d2, {0.0, -0.2});
    else
      serial::combine(d.out, d.f, d.field, d.d1, {0.0, 0.3}, d.d2, {0.0, -0.2});
    benchmark::DoNotOptimize(d.out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void BM_dot(benchmark::State& st) {
  Data d(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    cplx v = Parallel ? omp::dot(d.f, d.d1) : serial::dot(d.f, d.d1);
    benchmark::DoNotOptimize(v);
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void BM_axpy(benchmark::State& st) {
  Data d(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    if constexpr (Parallel)
      omp::axpy(d.out, {0.5, 0.1}, d.f);
    else
      serial::axpy(d.out, {0.5, 0.1}, d.f);
    benchmark::DoNotOptimize(d.out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void BM_multiply_wavenumber(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  int side = 1;
  while (side * side < n) side *= 2;
  Data d(side * side);
  std::vector<double> k(side);
  for (int i = 0; i < side; ++i) k[i] = i - side / 2;
  for (auto _ : st) {
    if constexpr (Parallel)
      omp::multiply_wavenumber(d.f, side, side, 1, k, {0.0, 1.0});
    else
      serial::multiply_wavenumber(d.f, side, side, 1, k, {0.0, 1.0});
    benchmark::DoNotOptimize(d.f.data());
  }
  st.SetItemsProcessed(st.iterations() * side * side);
}

}  // namespace

#define GRID_SIZES RangeMultiplier(4)->Range(64 * 64, 512 * 512)
BENCHMARK(BM_combine<false>)->GRID_SIZES;
BENCHMARK(BM_combine<true>)->GRID_SIZES;
BENCHMARK(BM_dot<false>)->GRID_SIZES;
BENCHMARK(BM_dot<true>)->GRID_SIZES;
BENCHMARK(BM_axpy<false>)->GRID_SIZES;
BENCHMARK(BM_axpy<true>)->GRID_SIZES;
BENCHMARK(BM_multiply_wavenumber<false>)->GRID_SIZES;
BENCHMARK(BM_multiply_wavenumber<true>)->GRID_SIZES;

BENCHMARK_MAIN();
