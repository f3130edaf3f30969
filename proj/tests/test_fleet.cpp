#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "skyroute/errors.hpp"
#include "skyroute/fleet.hpp"
#include "testutil.hpp"

using namespace skyroute;

namespace {

const DroneSpec kTable1Drone{"DJI M200 V2", 1.45, 24.0, 32.4, 81.0, 134.4, 349.2};

// Brute-force skyline + argmax, the independent oracle for block_nested_loop.
DroneSpec brute_force_selection(const std::vector<DroneSpec>& fleet, double w,
                                const QualityDirectionConfig& cfg) {
    const std::vector<DroneSpec> candidates = filter_by_payload(fleet, w);
    std::vector<DroneSpec> sky;
    for (const DroneSpec& a : candidates) {
        bool dominated = false;
        for (const DroneSpec& b : candidates) {
            const auto [better, worse] = count_diff(a, b, cfg);
            if (worse > 0 && better == 0) {
                dominated = true;
                break;
            }
        }
        if (!dominated) sky.push_back(a);
    }
    REQUIRE(!sky.empty());
    const DroneSpec* best = &sky.front();
    for (const DroneSpec& d : sky) {
        const double dv = quality_field(d, cfg.to_sel);
        const double bv = quality_field(*best, cfg.to_sel);
        if (dv > bv || (dv == bv && d.model < best->model)) best = &d;
    }
    return *best;
}

} // namespace

TEST_CASE("DroneSpec validation") {
    CHECK_NOTHROW(validate(kTable1Drone));

    DroneSpec bad = kTable1Drone;
    bad.flight_range_km = 40.0; // cannot exceed speed x flight time by > 5%
    CHECK_THROWS_AS(validate(bad), IntegrityError);

    bad = kTable1Drone;
    bad.battery_capacity_wh = 0.0;
    CHECK_THROWS_AS(validate(bad), IntegrityError);
}

TEST_CASE("count_diff on identical specs is (0, 0)") {
    const auto cfg = QualityDirectionConfig::defaults();
    const auto [better, worse] = count_diff(kTable1Drone, kTable1Drone, cfg);
    CHECK(better == 0);
    CHECK(worse == 0);
}

TEST_CASE("count_diff counts cost and benefit fields separately") {
    QualityDirectionConfig cfg;
    cfg.to_min = {"full_recharge_duration"};
    cfg.to_max = {"flight_range"};
    cfg.to_sel = "flight_range";

    DroneSpec a{"a", 1, 60, 30, 60, 60, 100};
    DroneSpec b{"b", 1, 60, 20, 60, 90, 100};
    const auto [better, worse] = count_diff(a, b, cfg);
    CHECK(better == 2); // lower recharge and higher range
    CHECK(worse == 0);
}

TEST_CASE("count_diff matches a literal re-evaluation on random pairs") {
    const auto cfg = QualityDirectionConfig::defaults();
    std::mt19937_64 rng(404);
    for (int i = 0; i < 1000; ++i) {
        const DroneSpec a = testutil::random_drone(rng, "a");
        const DroneSpec b = testutil::random_drone(rng, "b");

        int better = 0, worse = 0;
        for (const auto& f : cfg.to_min) {
            better += quality_field(a, f) < quality_field(b, f);
            worse += quality_field(a, f) > quality_field(b, f);
        }
        for (const auto& f : cfg.to_max) {
            better += quality_field(a, f) > quality_field(b, f);
            worse += quality_field(a, f) < quality_field(b, f);
        }
        const auto got = count_diff(a, b, cfg);
        CHECK(got.first == better);
        CHECK(got.second == worse);

        // antisymmetry
        const auto rev = count_diff(b, a, cfg);
        CHECK(rev.first == got.second);
        CHECK(rev.second == got.first);
    }
}

TEST_CASE("count_diff rejects unknown field names") {
    QualityDirectionConfig cfg;
    cfg.to_min = {"warp_core_output"};
    cfg.to_max = {"flight_range"};
    cfg.to_sel = "flight_range";
    CHECK_THROWS_AS(count_diff(kTable1Drone, kTable1Drone, cfg), ConfigError);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    QualityDirectionConfig overlap = QualityDirectionConfig::defaults();
    overlap.to_min.insert("flight_range"); // also in to_max
    CHECK_THROWS_AS(overlap.validate(), ConfigError);
}

TEST_CASE("filter_by_payload") {
    const std::vector<DroneSpec> fleet{kTable1Drone};
    CHECK(filter_by_payload(fleet, 0.0).size() == 1);
    CHECK(filter_by_payload(fleet, 2.0).empty()); // 1.45 kg capacity

    std::mt19937_64 rng(77);
    std::vector<DroneSpec> big = testutil::random_fleet(100, 11);
    std::vector<double> caps;
    for (const auto& d : big) caps.push_back(d.payload_capacity_kg);
    std::nth_element(caps.begin(), caps.begin() + 50, caps.end());
    const double w = caps[50];

    const auto got = filter_by_payload(big, w);
    std::vector<DroneSpec> expect;
    for (const auto& d : big)
        if (d.payload_capacity_kg >= w) expect.push_back(d);
    REQUIRE(got.size() == expect.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].model == expect[i].model);
}

TEST_CASE("block_nested_loop returns the single feasible drone") {
    const auto cfg = QualityDirectionConfig::defaults();
    CHECK(block_nested_loop({kTable1Drone}, 1.0, cfg).model == kTable1Drone.model);
    CHECK_THROWS_AS(block_nested_loop({kTable1Drone}, 2.0, cfg), NoCapableDroneError);
}

TEST_CASE("a strictly better drone wins") {
    const auto cfg = QualityDirectionConfig::defaults();
    DroneSpec strong{"strong", 3.0, 40, 45, 80, 60, 400};
    DroneSpec weak{"weak", 2.0, 30, 25, 60, 90, 300};
    CHECK(block_nested_loop({weak, strong}, 1.0, cfg).model == "strong");
    CHECK(block_nested_loop({strong, weak}, 1.0, cfg).model == "strong");
}

TEST_CASE("block_nested_loop matches the brute-force oracle on 50 seeds") {
    const auto cfg = QualityDirectionConfig::defaults();
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::vector<DroneSpec> fleet = testutil::random_fleet(200, seed);
        const double w = 1.0 + 0.01 * static_cast<double>(seed);
        const DroneSpec got = block_nested_loop(fleet, w, cfg);
        const DroneSpec want = brute_force_selection(fleet, w, cfg);
        CHECK(got.model == want.model);
    }
}

TEST_CASE("skyline is sound and complete") {
    const auto cfg = QualityDirectionConfig::defaults();
    const std::vector<DroneSpec> fleet = testutil::random_fleet(120, 5150);
    const double w = 1.2;
    const std::vector<DroneSpec> sky = skyline(fleet, w, cfg);
    const std::vector<DroneSpec> candidates = filter_by_payload(fleet, w);

    // soundness: no skyline member is dominated by any candidate
    for (const DroneSpec& s : sky)
        for (const DroneSpec& b : candidates) {
            const auto [better, worse] = count_diff(s, b, cfg);
            CHECK(!(worse > 0 && better == 0));
        }

    // completeness: every non-dominated candidate appears
    std::size_t non_dominated = 0;
    for (const DroneSpec& a : candidates) {
        bool dominated = false;
        for (const DroneSpec& b : candidates) {
            const auto [better, worse] = count_diff(a, b, cfg);
            if (worse > 0 && better == 0) dominated = true;
        }
        if (!dominated) ++non_dominated;
    }
    CHECK(sky.size() == non_dominated);
}

TEST_CASE("the winner is invariant under fleet permutation") {
    const auto cfg = QualityDirectionConfig::defaults();
    std::vector<DroneSpec> fleet = testutil::random_fleet(60, 321);
    const std::string winner = block_nested_loop(fleet, 1.0, cfg).model;
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(fleet.begin(), fleet.end(), rng);
        CHECK(block_nested_loop(fleet, 1.0, cfg).model == winner);
    }
}

TEST_CASE("load_fleet parses the drones CSV") {
    const auto dir = testutil::temp_dir("fleet");
    const auto file = testutil::write_file(
        dir / "drones.csv",
        "model,payload_kg,flight_time_min,range_km,speed_kmh,recharge_min,battery_wh\n"
        "DJI M200 V2,1.45,24,32.4,81,134.4,349.2\n"
        "heavylifter,5,45,50,70,150,800\n");
    const auto fleet = load_fleet(file);
    REQUIRE(fleet.size() == 2);
    CHECK(fleet[0].model == "DJI M200 V2");
    CHECK(fleet[0].flight_range_km == 32.4);
    CHECK(fleet[1].payload_capacity_kg == 5.0);

    const auto bad = testutil::write_file(dir / "bad.csv", "model,payload_kg\nx,1\n");
    CHECK_THROWS_AS(load_fleet(bad), ParseError);
}
