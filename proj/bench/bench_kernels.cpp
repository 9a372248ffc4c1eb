#include <memory>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "symqual/generators.hpp"
#include "symqual/geometry.hpp"
#include "symqual/kernels.hpp"
#include "symqual/layouts.hpp"
#include "symqual/metrics.hpp"
#include "symqual/symmetry.hpp"

using namespace symqual;

namespace {

struct Fixture {
    GeneratedGraph gen;
    Drawing drawing;
    std::vector<Vec2> normalized;
    std::vector<double> dist, weight;

    explicit Fixture(int m)
        : gen(gen_rotational(12, m, 1)), drawing(concentric_circles(gen.graph, gen.group)) {
        std::mt19937_64 rng(5);
        std::normal_distribution<double> jitter(0.0, 0.05);
        auto pos = drawing.positions();
        for (auto& p : pos) p = p + Vec2{jitter(rng), jitter(rng)};
        drawing = Drawing(gen.graph, pos);
        normalized = normalize_to_unit_circle(PointSet(pos)).points.points();
        const int n = gen.graph.vertex_count();
        dist.assign(static_cast<std::size_t>(n) * n, 0.0);
        weight.assign(dist.size(), 0.0);
        auto d = bfs_distances(gen.graph);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double v = d[static_cast<std::size_t>(i) * n + j];
                dist[static_cast<std::size_t>(i) * n + j] = v;
                weight[static_cast<std::size_t>(i) * n + j] = i == j ? 0.0 : 1.0 / (v * v);
            }
        }
    }
};

const Fixture& fixture(int m) {
    static std::vector<std::unique_ptr<Fixture>> cache(64);
    auto& slot = cache[static_cast<std::size_t>(m)];
    if (!slot) slot = std::make_unique<Fixture>(m);
    return *slot;
}

Frame origin_frame() { return RotationFrame{{0.0, 0.0}, 1}; }

void BM_fold_all_serial(benchmark::State& s) {
    const auto& f = fixture(static_cast<int>(s.range(0)));
    auto frame = origin_frame();
    for (auto _ : s) benchmark::DoNotOptimize(serial::fold_all(f.normalized, *f.gen.group.rotation_generator(), frame));
}
void BM_fold_all_parallel(benchmark::State& s) {
    const auto& f = fixture(static_cast<int>(s.range(0)));
    auto frame = origin_frame();
    for (auto _ : s) benchmark::DoNotOptimize(fold_all(f.normalized, *f.gen.group.rotation_generator(), frame));
}
void BM_sqg_serial(benchmark::State& s) {
    const auto& f = fixture(static_cast<int>(s.range(0)));
    for (auto _ : s) benchmark::DoNotOptimize(serial::sqg(f.gen.graph, f.drawing, f.gen.group));
}
void BM_sqg_parallel(benchmark::State& s) {
    const auto& f = fixture(static_cast<int>(s.range(0)));
    for (auto _ : s) benchmark::DoNotOptimize(sqg(f.gen.graph, f.drawing, f.gen.group));
}
void BM_fr_serial(benchmark::State& s) {
    const auto& f = fixture(static_cast<int>(s.range(0)));
    std::vector<Vec2> disp(f.drawing.size());
    for (auto _ : s) kernels::serial::fr_displacement(f.gen.graph, f.drawing.positions(), 0.3, disp);
}
void BM_fr_parallel(benchmark::State& s) {
    const auto& f = fixture(static_cast<int>(s.range(0)));
    std::vector<Vec2> disp(f.drawing.size());
    for (auto _ : s) kernels::fr_displacement(f.gen.graph, f.drawing.positions(), 0.3, disp);
}
void BM_smacof_serial(benchmark::State& s) {
    const auto& f = fixture(static_cast<int>(s.range(0)));
    std::vector<Vec2> out(f.drawing.size());
    for (auto _ : s) kernels::serial::smacof_rhs(f.drawing.positions(), f.dist, f.weight, out);
}
void BM_smacof_parallel(benchmark::State& s) {
    const auto& f = fixture(static_cast<int>(s.range(0)));
    std::vector<Vec2> out(f.drawing.size());
    for (auto _ : s) kernels::smacof_rhs(f.drawing.positions(), f.dist, f.weight, out);
}

}  // namespace

BENCHMARK(BM_fold_all_serial)->Arg(10)->Arg(40);
BENCHMARK(BM_fold_all_parallel)->Arg(10)->Arg(40);
BENCHMARK(BM_sqg_serial)->Arg(4)->Arg(16);
BENCHMARK(BM_sqg_parallel)->Arg(4)->Arg(16);
BENCHMARK(BM_fr_serial)->Arg(10)->Arg(40);
BENCHMARK(BM_fr_parallel)->Arg(10)->Arg(40);
BENCHMARK(BM_smacof_serial)->Arg(10)->Arg(40);
BENCHMARK(BM_smacof_parallel)->Arg(10)->Arg(40);

BENCHMARK_MAIN();
