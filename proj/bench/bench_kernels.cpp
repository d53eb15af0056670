// Serial reference kernels against the OpenMP kernels on a spin-chain
// Hamiltonian, plus one full IPT map application.

#include <vector>

#include <benchmark/benchmark.h>

#include "relaxpt/kernels.hpp"
#include "relaxpt/models.hpp"
#include "relaxpt/partition.hpp"
#include "relaxpt/perturbation.hpp"

namespace {

using namespace relaxpt;

const SparseSymmetric<double>& chain(int l) {
  static std::vector<SparseSymmetric<double>> cache(24);
  auto& h = cache[static_cast<std::size_t>(l)];
  if (h.dim() == 0) h = build_heisenberg(static_cast<std::size_t>(l), 5.0, 7, true).hamiltonian;
  return h;
}

template <bool Parallel>
void bm_spmv(benchmark::State& state) {
  const auto& h = chain(static_cast<int>(state.range(0)));
  std::vector<double> x(h.dim(), 1.0), y(h.dim());
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::omp::spmv<double>(h.row_ptr(), h.col_index(), h.values(), x, y);
    } else {
      kernels::serial::spmv<double>(h.row_ptr(), h.col_index(), h.values(), x, y);
    }
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * h.nnz()));
}

template <bool Parallel>
void bm_ipt_image(benchmark::State& state) {
  const auto& h = chain(static_cast<int>(state.range(0)));
  const auto p = epstein_nesbet(h, 0);
  std::vector<double> psi(h.dim(), 1e-3), u(h.dim()), image(h.dim());
  psi[0] = 1.0;
  p.h1.multiply(psi, u);
  const double e0 = p.unperturbed_energy();
  for (auto _ : state) {
    double ss;
    if constexpr (Parallel) {
      ss = kernels::omp::ipt_image<double>(p.h0_diag, e0, 1.0, 0, psi, u, image);
    } else {
      ss = kernels::serial::ipt_image<double>(p.h0_diag, e0, 1.0, 0, psi, u, image);
    }
    benchmark::DoNotOptimize(ss);
  }
}

void bm_ipt_map(benchmark::State& state) {
  const auto& h = chain(static_cast<int>(state.range(0)));
  const auto p = epstein_nesbet(h, 0);
  IptMap<double> map(p);
  std::vector<double> psi(h.dim(), 1e-3), image(h.dim());
  psi[0] = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(map.evaluate(psi, image));
}

}  // namespace

BENCHMARK(bm_spmv<false>)->DenseRange(14, 20, 3)->Name("spmv/serial");
BENCHMARK(bm_spmv<true>)->DenseRange(14, 20, 3)->Name("spmv/omp");
BENCHMARK(bm_ipt_image<false>)->DenseRange(14, 20, 3)->Name("ipt_image/serial");
BENCHMARK(bm_ipt_image<true>)->DenseRange(14, 20, 3)->Name("ipt_image/omp");
BENCHMARK(bm_ipt_map)->DenseRange(14, 20, 3)->Name("ipt_map");

BENCHMARK_MAIN();
