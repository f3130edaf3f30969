#include <benchmark/benchmark.h>

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skyroute/composition.hpp"
#include "skyroute/congestion.hpp"
#include "skyroute/experiment.hpp"
#include "skyroute/fleet.hpp"

namespace {

using namespace skyroute;

SkywayNetwork make_network(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> length(2000.0, 10000.0);
    std::vector<NodeRecord> nodes;
    for (int i = 0; i < n; ++i) nodes.push_back({i, 0.0, 0.0, 3});
    std::vector<Segment> segments;
    SegmentId next = 0;
    std::set<std::pair<NodeId, NodeId>> used;
    for (int i = 1; i < n; ++i) {
        const NodeId j = std::uniform_int_distribution<NodeId>(0, i - 1)(rng);
        segments.push_back({next++, j, i, length(rng)});
        used.emplace(j, i);
    }
    int extra = static_cast<int>(0.35 * n);
    while (extra > 0) {
        NodeId a = std::uniform_int_distribution<NodeId>(0, n - 1)(rng);
        NodeId b = std::uniform_int_distribution<NodeId>(0, n - 1)(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (!used.emplace(a, b).second) continue;
        segments.push_back({next++, a, b, length(rng)});
        --extra;
    }
    return SkywayNetwork(std::move(nodes), std::move(segments));
}

DroneSpec bench_drone() {
    return DroneSpec{"bench", 2.0, 120.0, 100.0, 60.0, 90.0, 500.0};
}

LoadProfileTable bench_profiles() {
    StationLoadProfile p;
    p.schedule = {{0.0, 4.0}};
    p.mean_occupancy_min = 30.0;
    return LoadProfileTable(p);
}

void TopKComposition(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SkywayNetwork net = make_network(n, 7);
    const std::vector<DroneSpec> fleet{bench_drone()};
    const LoadProfileTable profiles = bench_profiles();
    const auto cfg = QualityDirectionConfig::defaults();
    const DeliveryQuery query{0, n - 1, 480.0, 1.0};
    for (auto _ : state) {
        auto plans = top_k_composition(net, fleet, query, 5, profiles, cfg, {});
        benchmark::DoNotOptimize(plans);
    }
    state.SetComplexityN(n);
}
BENCHMARK(TopKComposition)->RangeMultiplier(2)->Range(10, 160)->Complexity();

void ExhaustiveComposition(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SkywayNetwork net = make_network(n, 7);
    const std::vector<DroneSpec> fleet{bench_drone()};
    const LoadProfileTable profiles = bench_profiles();
    const auto cfg = QualityDirectionConfig::defaults();
    const DeliveryQuery query{0, n - 1, 480.0, 1.0};
    for (auto _ : state) {
        auto best = exhaustive_composition(net, fleet, query, profiles, cfg, {});
        benchmark::DoNotOptimize(best);
    }
    state.SetComplexityN(n);
}
BENCHMARK(ExhaustiveComposition)->RangeMultiplier(2)->Range(10, 40)->Complexity();

void ErlangC(benchmark::State& state) {
    double load = 0.1;
    for (auto _ : state) {
        load = load < 2.9 ? load + 0.01 : 0.1;
        benchmark::DoNotOptimize(erlang_c_wait_probability(load, 3));
    }
}
BENCHMARK(ErlangC);

void StationSimulation(benchmark::State& state) {
    StationLoadProfile p;
    p.schedule = {{0.0, 6.0}};
    p.mean_occupancy_min = 20.0;
    p.seed = 11;
    for (auto _ : state) {
        auto sim = simulate_station(p, 3, 1e12, static_cast<std::size_t>(state.range(0)));
        benchmark::DoNotOptimize(sim);
    }
}
BENCHMARK(StationSimulation)->Arg(10000)->Arg(100000);

void SkylineSelection(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<DroneSpec> fleet;
    for (int i = 0; i < state.range(0); ++i) {
        DroneSpec d = bench_drone();
        d.model = "m" + std::to_string(i);
        d.payload_capacity_kg = 0.5 + 4.0 * u(rng);
        d.flight_range_km = 20.0 + 60.0 * u(rng);
        d.max_speed_kmh = 40.0 + 50.0 * u(rng);
        d.full_recharge_min = 60.0 + 90.0 * u(rng);
        d.battery_capacity_wh = 200.0 + 400.0 * u(rng);
        fleet.push_back(d);
    }
    const auto cfg = QualityDirectionConfig::defaults();
    for (auto _ : state) {
        auto winner = block_nested_loop(fleet, 1.0, cfg);
        benchmark::DoNotOptimize(winner);
    }
}
BENCHMARK(SkylineSelection)->Arg(200)->Arg(1000);

} // namespace

BENCHMARK_MAIN();
