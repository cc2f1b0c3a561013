// Compares the depth-first traversal against the O(n^3) scans, and the
// OpenMP scan/sweep against their serial references.

#include <benchmark/benchmark.h>

#include "mapslice/oracle.hpp"
#include "mapslice/sweep.hpp"

using namespace mapslice;

namespace {

const PreparedMap& bench_map() {
    static const PreparedMap pm = PreparedMap::prepare(perturbed_map(0, 424242, 0.12));
    return pm;
}

Paving paving_for(int n) {
    int nu = 0;
    while ((1 << nu) < n) ++nu;
    return Paving::with_subdivision(nu);
}

SlicePlane mid_plane() {
    const PreparedMap& pm = bench_map();
    return {0.5 * (pm.zmin + pm.zmax), 0};
}

void BM_brute_force_serial(benchmark::State& state) {
    const Paving p = paving_for(int(state.range(0)));
    for (auto _ : state) {
        const ActiveSet set = brute_force_active_serial(bench_map(), p, mid_plane());
        benchmark::DoNotOptimize(set.boxes.data());
    }
}

void BM_brute_force_openmp(benchmark::State& state) {
    const Paving p = paving_for(int(state.range(0)));
    for (auto _ : state) {
        const ActiveSet set = brute_force_active(bench_map(), p, mid_plane(), 0);
        benchmark::DoNotOptimize(set.boxes.data());
    }
}

void BM_traversal(benchmark::State& state) {
    const Paving p = paving_for(int(state.range(0)));
    for (auto _ : state) {
        Traversal tr(bench_map(), mid_plane(), p, LoopMode::sound);
        while (tr.valid()) tr.advance();
        benchmark::DoNotOptimize(tr.boxes_emitted());
    }
}

struct NullSink : ActivationSink {
    void accept(int, const SliceActivation&) override {}
};

void run_sweep(int jobs, int n) {
    static std::vector<PreparedMap> maps = [] {
        std::vector<PreparedMap> out;
        for (int m = 0; m < 8; ++m) {
            auto coeffs = perturbed_map(m, 5000 + m, 0.12).coeffs();
            for (Vec3& c : coeffs) c.z += 0.3 * m;
            out.push_back(PreparedMap::prepare(TrivariateMap(m, coeffs)));
        }
        return out;
    }();
    SweepOptions opt;
    opt.jobs = jobs;
    opt.slab_halfwidth = 0.02;
    NullSink sink;
    sweep(maps, PlaneStack::uniform(0.2, 0.35, 8), paving_for(n), sink, opt);
}

void BM_sweep_serial(benchmark::State& state) {
    for (auto _ : state) run_sweep(1, int(state.range(0)));
}

void BM_sweep_openmp(benchmark::State& state) {
    for (auto _ : state) run_sweep(4, int(state.range(0)));
}

}  // namespace

BENCHMARK(BM_brute_force_serial)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_brute_force_openmp)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_traversal)->Arg(16)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_serial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_openmp)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
