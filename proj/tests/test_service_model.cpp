#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "skyroute/errors.hpp"
#include "skyroute/service_model.hpp"

using namespace skyroute;

namespace {

const DroneSpec kTable1Drone{"DJI M200 V2", 1.45, 24.0, 32.4, 81.0, 134.4, 349.2};

Segment seg_km(double km) { return Segment{0, 0, 1, km * 1000.0}; }

} // namespace

TEST_CASE("service_time: zero payload flies at max speed") {
    DroneSpec d = kTable1Drone;
    d.max_flight_time_min = 80.0; // keep range/speed consistency for an 81 km leg
    d.flight_range_km = 100.0;
    CHECK(service_time_min(seg_km(81.0), d, 0.0) == doctest::Approx(60.0).epsilon(1e-12));
}

TEST_CASE("service_time at full payload, alpha = 0.2") {
    // 10 km at 81 km/h derated by 20%: 10 / (81 * 0.8) hours
    const double expected = 10.0 / (81.0 * 0.8) * 60.0; // 9.2592592...
    CHECK(service_time_min(seg_km(10.0), kTable1Drone, 1.45) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(service_time_min(seg_km(10.0), kTable1Drone, 1.45) ==
          doctest::Approx(9.259259259259263).epsilon(1e-9));
}

TEST_CASE("service_time is homogeneous in length") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> len(0.5, 40.0);
    std::uniform_real_distribution<double> pay(0.0, 1.45);
    for (int i = 0; i < 100; ++i) {
        const double km = len(rng);
        const double w = pay(rng);
        const double once = service_time_min(seg_km(km), kTable1Drone, w);
        const double twice = service_time_min(seg_km(2.0 * km), kTable1Drone, w);
        CHECK(twice == doctest::Approx(2.0 * once).epsilon(1e-12));
        CHECK(once > 0.0);
    }
}

TEST_CASE("service_time rejects overweight payloads") {
    CHECK_THROWS_AS(service_time_min(seg_km(1.0), kTable1Drone, 1.46), InfeasibleError);
    CHECK_THROWS_AS(energy_consumption(seg_km(1.0), kTable1Drone, 1.46), InfeasibleError);
}

TEST_CASE("energy_consumption endpoints") {
    // zero payload, full-range leg consumes exactly the whole battery
    const Segment full_range{0, 0, 1, 32400.0};
    CHECK(energy_consumption(full_range, kTable1Drone, 0.0) == 1.0);
    CHECK(energy_consumption(Segment{0, 0, 1, 0.0}, kTable1Drone, 0.0) == 0.0);
}

TEST_CASE("energy_consumption grows with payload and length") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> len(0.5, 30.0);
    std::uniform_real_distribution<double> pay(0.0, 1.4);
    for (int i = 0; i < 100; ++i) {
        const double km = len(rng);
        const double w = pay(rng);
        const double base = energy_consumption(seg_km(km), kTable1Drone, w);
        CHECK(energy_consumption(seg_km(km * 1.01), kTable1Drone, w) > base);
        CHECK(energy_consumption(seg_km(km), kTable1Drone, w + 0.05) > base);
    }
}

TEST_CASE("partial recharge: already full means no charge") {
    const EnergyModelParams params;
    const auto r = partial_recharge_time(kTable1Drone, {1.0, 0.0}, 0.5, params);
    CHECK(r.duration_min == 0.0);
    CHECK(r.battery_fraction == 1.0);
}

TEST_CASE("partial recharge charges linearly to need plus reserve") {
    const EnergyModelParams params; // reserve 0.1
    // target 0.7 from 0.2 at 134.4 min full recharge: half a battery
    const auto r = partial_recharge_time(kTable1Drone, {0.2, 0.0}, 0.6, params);
    CHECK(r.duration_min == doctest::Approx(0.5 * 134.4).epsilon(1e-12));
    CHECK(r.battery_fraction == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("partial recharge: target below current charge is free") {
    const EnergyModelParams params;
    const auto r = partial_recharge_time(kTable1Drone, {0.9, 0.0}, 0.3, params);
    CHECK(r.duration_min == 0.0);
    CHECK(r.battery_fraction == 0.9);
}

TEST_CASE("a leg that cannot leave the reserve is infeasible") {
    const EnergyModelParams params; // reserve 0.1
    CHECK_THROWS_AS(partial_recharge_time(kTable1Drone, {0.5, 0.0}, 0.95, params),
                    InfeasibleError);
    // boundary: exactly 1.0 total is allowed
    CHECK_NOTHROW(partial_recharge_time(kTable1Drone, {0.5, 0.0}, 0.9, params));
}

TEST_CASE("energy model parameters are range-checked") {
    CHECK_NOTHROW(validate(EnergyModelParams{}));
    CHECK_THROWS_AS(validate(EnergyModelParams{1.0, 0.3, 0.1}), ConfigError);
    CHECK_THROWS_AS(validate(EnergyModelParams{0.2, -0.1, 0.1}), ConfigError);
    CHECK_THROWS_AS(validate(EnergyModelParams{0.2, 0.3, 0.6}), ConfigError);
}

TEST_CASE("recharge duration is bounded by the full recharge time") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    std::uniform_real_distribution<double> need(0.0, 0.9);
    const EnergyModelParams params;
    for (int i = 0; i < 200; ++i) {
        const auto r = partial_recharge_time(kTable1Drone, {frac(rng), 0.0}, need(rng), params);
        CHECK(r.duration_min >= 0.0);
        CHECK(r.duration_min <= kTable1Drone.full_recharge_min);
    }
}
