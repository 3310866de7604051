// OpenMP kernels against their serial twins.

#include <random>

#include <benchmark/benchmark.h>

#include "epcl/core.hpp"
#include "epcl/ep_models.hpp"
#include "epcl/scattering.hpp"

namespace {

using epcl::cd;
using epcl::SiteWindow;

epcl::Lattice random_lattice(SiteWindow w) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cd> kappa(w.size()), v(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    kappa[i] = {1.0 + 0.3 * u(rng), 0.2 * u(rng)};
    v[i] = {u(rng), 0.2 * u(rng)};
  }
  return epcl::Lattice(w, std::move(kappa), std::move(v), 1.0);
}

epcl::StateVector random_state(SiteWindow w) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  epcl::StateVector s(w);
  for (auto& z : s.amplitudes()) z = {g(rng), g(rng)};
  return s;
}

template <bool Parallel>
void BM_apply_hamiltonian(benchmark::State& state) {
  const auto w = SiteWindow::symmetric(state.range(0));
  const auto lat = random_lattice(w);
  const auto psi = random_state(w);
  for (auto _ : state) {
    auto phi = Parallel ? epcl::apply_hamiltonian(lat, psi) : epcl::serial::apply_hamiltonian(lat, psi);
    benchmark::DoNotOptimize(phi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.size()));
}

template <bool Parallel>
void BM_apply_tridiagonal(benchmark::State& state) {
  const auto w = SiteWindow::symmetric(state.range(0));
  const auto op = epcl::TridiagonalOperator::from_lattice(random_lattice(w), w);
  const auto psi = random_state(w);
  std::vector<cd> out(w.size());
  for (auto _ : state) {
    if (Parallel) {
      epcl::apply_tridiagonal(op, psi.amplitudes(), out);
    } else {
      epcl::serial::apply_tridiagonal(op, psi.amplitudes(), out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.size()));
}

template <bool Parallel>
void BM_spectrum(benchmark::State& state) {
  epcl::models::PtLatticeSpec spec;
  spec.window = SiteWindow::symmetric(202);
  const auto lat = epcl::models::pt_lattice(spec);
  const auto grid = epcl::scattering::uniform_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto s = Parallel ? epcl::scattering::spectrum(lat, grid, 200) : epcl::scattering::serial::spectrum(lat, grid, 200);
    benchmark::DoNotOptimize(s.records.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_apply_hamiltonian<true>)->Name("apply_hamiltonian/omp")->Arg(1000)->Arg(100000)->Arg(1000000);
BENCHMARK(BM_apply_hamiltonian<false>)->Name("apply_hamiltonian/serial")->Arg(1000)->Arg(100000)->Arg(1000000);
BENCHMARK(BM_apply_tridiagonal<true>)->Name("apply_tridiagonal/omp")->Arg(1000)->Arg(100000)->Arg(1000000);
BENCHMARK(BM_apply_tridiagonal<false>)->Name("apply_tridiagonal/serial")->Arg(1000)->Arg(100000)->Arg(1000000);
BENCHMARK(BM_spectrum<true>)->Name("scattering_spectrum/omp")->Arg(2001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_spectrum<false>)->Name("scattering_spectrum/serial")->Arg(2001)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
