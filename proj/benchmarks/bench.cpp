// Microbenchmarks for the hot construction and verification paths.

#include <benchmark/benchmark.h>

#include "gqlab/coordinates.hpp"
#include "gqlab/dual_net.hpp"
#include "gqlab/incidence.hpp"
#include "gqlab/inversive.hpp"
#include "gqlab/reconstruction.hpp"
#include "gqlab/symmetry.hpp"

using namespace gqlab;

static void BM_BuildW8(benchmark::State& state) {
  Gf2n f(3);
  for (auto _ : state) {
    SymplecticGq W = build_symplectic(f);
    benchmark::DoNotOptimize(W.S.points());
  }
}
BENCHMARK(BM_BuildW8);

static void BM_VerifyGqW8(benchmark::State& state) {
  SymplecticGq W = build_symplectic(Gf2n(3));
  for (auto _ : state) {
    GqResult r = verify_gq(W.S, 1);
    benchmark::DoNotOptimize(gq_ok(r));
  }
}
BENCHMARK(BM_VerifyGqW8);

static void BM_SpanOppositeW8(benchmark::State& state) {
  SymplecticGq W = build_symplectic(Gf2n(3));
  std::size_t y = 0;
  while (W.S.adj(0).test(y)) ++y;  // first point opposite 0
  for (auto _ : state) {
    PointSetHandle sp = span(W.S, 0, y);
    benchmark::DoNotOptimize(sp.pts.count());
  }
}
BENCHMARK(BM_SpanOppositeW8);

static void BM_RegularPointW8(benchmark::State& state) {
  SymplecticGq W = build_symplectic(Gf2n(3));
  for (auto _ : state)
    benchmark::DoNotOptimize(is_regular_point(W.S, 0));
}
BENCHMARK(BM_RegularPointW8);

static void BM_DualNetExtractW8(benchmark::State& state) {
  SymplecticGq W = build_symplectic(Gf2n(3));
  for (auto _ : state) {
    DualNet net = extract_dual_net(W.S, 0);
    benchmark::DoNotOptimize(net.blocks.size());
  }
}
BENCHMARK(BM_DualNetExtractW8);

static void BM_CheckVySampledW8(benchmark::State& state) {
  SymplecticGq W = build_symplectic(Gf2n(3));
  DualNet net = extract_dual_net(W.S, 0);
  CheckOptions opt;
  opt.budget = 86000;
  opt.seed = 1;
  for (auto _ : state) {
    VyOutcome vy = check_vy(net, opt);
    benchmark::DoNotOptimize(vy.pass);
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * 2 * 86000);
}
BENCHMARK(BM_CheckVySampledW8);

static void BM_TouchMatrixW8(benchmark::State& state) {
  SymplecticGq W = build_symplectic(Gf2n(3));
  CircleGeometry G = build_circle_geometry(W.S, *find_polarity(W));
  for (auto _ : state) {
    std::size_t touches = 0;
    for (std::size_t c = 0; c < G.size(); ++c)
      for (std::size_t d = c + 1; d < G.size(); ++d)
        touches += G.touch_point(c, d) >= 0;
    benchmark::DoNotOptimize(touches);
  }
}
BENCHMARK(BM_TouchMatrixW8);

static void BM_ReconstructW8(benchmark::State& state) {
  SymplecticGq W = build_symplectic(Gf2n(3));
  CircleGeometry G = build_circle_geometry(W.S, *find_polarity(W));
  for (auto _ : state) {
    Reconstruction R = reconstruct(G);
    benchmark::DoNotOptimize(R.S.points());
  }
}
BENCHMARK(BM_ReconstructW8);

BENCHMARK_MAIN();
