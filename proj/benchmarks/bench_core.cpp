#include <benchmark/benchmark.h>

#include "conjforge/harness.hpp"

namespace {

using namespace conjforge;

struct Ctx {
  rootsys::RootSystem rs;
  liealg::ChevalleyBasis cb;
  rootsys::ReductionOrder order;
  explicit Ctx(const char* k)
      : rs(rootsys::RootSystem::build(rootsys::RootSystemKind::parse(k))),
        cb(liealg::ChevalleyBasis::build(rs)),
        order(rootsys::builtin_order(rs)) {}
};

void BM_BuildRootSystem(benchmark::State& state, const char* kind) {
  auto k = rootsys::RootSystemKind::parse(kind);
  for (auto _ : state) {
    auto rs = rootsys::RootSystem::build(k);
    benchmark::DoNotOptimize(rs.size());
  }
}
BENCHMARK_CAPTURE(BM_BuildRootSystem, F4, "F4");
BENCHMARK_CAPTURE(BM_BuildRootSystem, E8, "E8");

void BM_ChevalleyBasis(benchmark::State& state, const char* kind) {
  auto rs = rootsys::RootSystem::build(rootsys::RootSystemKind::parse(kind));
  for (auto _ : state) {
    auto cb = liealg::ChevalleyBasis::build(rs);
    benchmark::DoNotOptimize(cb.dim());
  }
}
BENCHMARK_CAPTURE(BM_ChevalleyBasis, D4, "D4");
BENCHMARK_CAPTURE(BM_ChevalleyBasis, F4, "F4");

void BM_SearchOrder(benchmark::State& state, const char* kind) {
  auto rs = rootsys::RootSystem::build(rootsys::RootSystemKind::parse(kind));
  for (auto _ : state) {
    auto ord = rootsys::search_order(rs);
    benchmark::DoNotOptimize(ord.sequence.size());
  }
}
BENCHMARK_CAPTURE(BM_SearchOrder, E8, "E8");

void BM_Conjugate(benchmark::State& state, const char* kind) {
  Ctx c(kind);
  harness::ExperimentConfig cfg;
  cfg.kind = c.rs.kind();
  cfg.seed = 7;
  cfg.scramble_len = 5;
  auto inst = harness::gen_instance(c.cb, cfg, 0);
  for (auto _ : state) {
    auto res = reduce::conjugate(c.cb, c.order, inst.u, inst.v);
    benchmark::DoNotOptimize(res.verified);
  }
}
BENCHMARK_CAPTURE(BM_Conjugate, A3, "A3");
BENCHMARK_CAPTURE(BM_Conjugate, D4, "D4");
BENCHMARK_CAPTURE(BM_Conjugate, F4, "F4");

}  // namespace

BENCHMARK_MAIN();
