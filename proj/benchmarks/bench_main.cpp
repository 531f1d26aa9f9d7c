#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "cusped/alexander.hpp"
#include "cusped/cuspterms.hpp"
#include "cusped/laplace.hpp"
#include "cusped/ruelle.hpp"
#include "cusped/spectrum.hpp"

namespace {

std::string read(const char* name) {
  std::ifstream in(std::string(CUSPED_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void BM_AlexanderFig8Zeta5(benchmark::State& state) {
  const auto f = cusped::parse_presentation(read("fig8_zeta5.pres"));
  for (auto _ : state) benchmark::DoNotOptimize(cusped::alexander_invariant(f.presentation, f.rho, f.epsilon));
}
BENCHMARK(BM_AlexanderFig8Zeta5);

void BM_EnumerateFig8(benchmark::State& state) {
  const auto g = cusped::parse_generators(read("fig8.gens"));
  const std::vector<cusped::Complex> rho(g.gens.size(), 1.0);
  const int len = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cusped::enumerate_classes(g.gens, rho, len, 5.0));
}
BENCHMARK(BM_EnumerateFig8)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_EulerProduct(benchmark::State& state) {
  const auto s = cusped::parse_spectrum(read("fig8_cutoff3.csv"));
  for (auto _ : state) benchmark::DoNotOptimize(cusped::euler_product(s, 4.0));
}
BENCHMARK(BM_EulerProduct);

void BM_Epstein(benchmark::State& state) {
  const cusped::Lattice2D L{{1.0, 0.0}, {0.3, 1.1}};
  for (auto _ : state) benchmark::DoNotOptimize(cusped::epstein(L, {}, 0.25));
}
BENCHMARK(BM_Epstein)->Unit(benchmark::kMicrosecond);

void BM_EpsteinConstants(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cusped::epstein_residue_and_constant({}, {}));
}
BENCHMARK(BM_EpsteinConstants)->Unit(benchmark::kMillisecond);

void BM_QuadratureTheta(benchmark::State& state) {
  const auto f = cusped::heat_function(cusped::HeatAtom::theta(1.0));
  for (auto _ : state) benchmark::DoNotOptimize(cusped::quadrature_lprime(f, 2.0));
}
BENCHMARK(BM_QuadratureTheta)->Unit(benchmark::kMicrosecond);

void BM_QuadratureDigamma(benchmark::State& state) {
  const auto f = cusped::heat_function(cusped::HeatAtom::digamma_kernel(0.5));
  for (auto _ : state) benchmark::DoNotOptimize(cusped::quadrature_lprime(f, 2.0));
}
BENCHMARK(BM_QuadratureDigamma)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
