#include <benchmark/benchmark.h>

#include "subsep/fixtures.hpp"
#include "subsep/kernels.hpp"
#include "subsep/random.hpp"

using namespace subsep;

namespace {

std::vector<PencilCut> sym_cuts() {
  const Fixture& f = fixture_by_tag("C_2x2_ii");
  return pencil_cuts(f.basis(), Partition::natural(f.profile));
}

std::vector<Mat> random_states(int n) {
  Rng rng = make_rng(11);
  const Mat basis = Mat::Identity(9, 9);
  std::vector<Mat> out;
  for (int i = 0; i < n; ++i) out.push_back(random_state_on(rng, basis.leftCols(3), 3));
  return out;
}

void BM_DefectGridSerial(benchmark::State& st) {
  const auto cuts = sym_cuts();
  ProjectiveGrid grid{3, static_cast<int>(st.range(0))};
  for (auto _ : st) benchmark::DoNotOptimize(defect_grid_serial(cuts, grid));
  st.SetItemsProcessed(st.iterations() * grid.size());
}

void BM_DefectGridParallel(benchmark::State& st) {
  const auto cuts = sym_cuts();
  ProjectiveGrid grid{3, static_cast<int>(st.range(0))};
  for (auto _ : st) benchmark::DoNotOptimize(defect_grid_parallel(cuts, grid));
  st.SetItemsProcessed(st.iterations() * grid.size());
}

void BM_PartialTransposeSerial(benchmark::State& st) {
  const auto rhos = random_states(static_cast<int>(st.range(0)));
  const DimensionProfile p({3, 3});
  for (auto _ : st) benchmark::DoNotOptimize(min_pt_eigenvalues_serial(rhos, p, {1}));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_PartialTransposeParallel(benchmark::State& st) {
  const auto rhos = random_states(static_cast<int>(st.range(0)));
  const DimensionProfile p({3, 3});
  for (auto _ : st) benchmark::DoNotOptimize(min_pt_eigenvalues_parallel(rhos, p, {1}));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_DefectGridSerial)->Arg(16)->Arg(24);
BENCHMARK(BM_DefectGridParallel)->Arg(16)->Arg(24);
BENCHMARK(BM_PartialTransposeSerial)->Arg(1000);
BENCHMARK(BM_PartialTransposeParallel)->Arg(1000);

BENCHMARK_MAIN();
