// Serial reference kernels against their OpenMP counterparts.
#include "tgit/action.hpp"
#include "tgit/quotient.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace tgit;

namespace {

// Complete planar fan on the primitive vectors with entries in [-r, r], by angle.
Fan planar_fan(long long r) {
    std::vector<IntVector> rays;
    for (long long x = -r; x <= r; ++x)
        for (long long y = -r; y <= r; ++y)
            if (std::gcd(x, y) == 1) rays.push_back({x, y});
    auto angle = [](const IntVector& v) { return std::atan2(v[1].convert_to<double>(), v[0].convert_to<double>()); };
    std::sort(rays.begin(), rays.end(), [&](const IntVector& a, const IntVector& b) { return angle(a) < angle(b); });
    std::vector<FaceKey> cones;
    for (std::size_t i = 0; i < rays.size(); ++i) {
        const std::size_t j = (i + 1) % rays.size();
        cones.push_back({std::min(i, j), std::max(i, j)});
    }
    return Fan::validate({2, rays, cones});
}

ToricDivisor ample_like(const Fan& fan) {
    IntVector a;
    for (const auto& v : fan.rays()) a.push_back(1 + abs(v[0]) + abs(v[1]));
    return {a};
}

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void BM_SemistableDivisor(benchmark::State& state) {
    const Fan fan = planar_fan(state.range(1));
    const SubtorusAction action(IntMatrix{{1}, {2}});
    const ToricDivisor d = ample_like(fan);
    for (auto _ : state) benchmark::DoNotOptimize(semistable_divisor(d, {}, action, fan, mode(state)));
    state.counters["faces"] = static_cast<double>(fan.faces().size());
}

void BM_SemistableGroup(benchmark::State& state) {
    const Fan fan = planar_fan(state.range(1));
    const SubtorusAction action(IntMatrix{{1}, {2}});
    const DivisorGroup group({ample_like(fan)});
    for (auto _ : state) benchmark::DoNotOptimize(semistable_group(group, {}, action, fan, mode(state)));
    state.counters["faces"] = static_cast<double>(fan.faces().size());
}

void BM_Chambers(benchmark::State& state) {
    const Fan fan = Fan::validate({3, {{1, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 0, 1}}, {{0, 1, 2, 3}}});
    const SubtorusAction action(IntMatrix{{2, 0}, {1, 2}, {1, 1}});
    for (auto _ : state) benchmark::DoNotOptimize(git_chambers(action, fan, mode(state)));
}

void BM_Quotient(benchmark::State& state) {
    const Fan fan = planar_fan(state.range(1));
    const SubtorusAction action(IntMatrix{{1}, {2}});
    const auto ss = semistable_divisor(ample_like(fan), {}, action, fan);
    for (auto _ : state) benchmark::DoNotOptimize(build_quotient(ss, action, fan, mode(state)));
}

}  // namespace

BENCHMARK(BM_SemistableDivisor)->ArgsProduct({{0, 1}, {2, 4}})->ArgNames({"parallel", "r"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SemistableGroup)->ArgsProduct({{0, 1}, {2, 4}})->ArgNames({"parallel", "r"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Chambers)->ArgsProduct({{0, 1}})->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Quotient)->ArgsProduct({{0, 1}, {2}})->ArgNames({"parallel", "r"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
