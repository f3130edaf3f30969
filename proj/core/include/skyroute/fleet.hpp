#ifndef SKYROUTE_FLEET_HPP
#define SKYROUTE_FLEET_HPP

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace skyroute {

/// QoS record of one drone model.
struct DroneSpec {
    std::string model;
    double payload_capacity_kg = 0.0;
    double max_flight_time_min = 0.0;
    double flight_range_km = 0.0;
    double max_speed_kmh = 0.0;
    double full_recharge_min = 0.0;
    double battery_capacity_wh = 0.0;
};

/// Checks positivity of all numeric fields and physical consistency
/// (range <= speed * flight_time, with 5% slack for vendor-table rounding).
/// Throws IntegrityError.
void validate(const DroneSpec& drone);

// Canonical quality-field names usable in QualityDirectionConfig:
//   payload_capacity, max_flight_time, flight_range, max_speed,
//   full_recharge_duration, battery_capacity
double quality_field(const DroneSpec& drone, std::string_view name); ///< throws ConfigError

/// Which quality fields are costs, which are benefits, and which single
/// field picks the winner from the skyline.
struct QualityDirectionConfig {
    std::set<std::string> to_min;
    std::set<std::string> to_max;
    std::string to_sel;

    /// to_min = {full_recharge_duration}; to_max = everything else;
    /// to_sel = flight_range.
    static QualityDirectionConfig defaults();

    /// Disjointness, membership of to_sel, known field names. Throws ConfigError.
    void validate() const;
};

/// Counts fields where a beats b (better) and where b beats a (worse).
/// Ties count toward neither.
std::pair<int, int> count_diff(const DroneSpec& a, const DroneSpec& b,
                               const QualityDirectionConfig& cfg);

/// Order-preserving filter: drones with payload_capacity >= w.
std::vector<DroneSpec> filter_by_payload(const std::vector<DroneSpec>& fleet, double w);

/// Block-nested-loop skyline of the payload-feasible drones. b dominates a
/// iff count_diff(a, b) has worse > 0 and better == 0.
std::vector<DroneSpec> skyline(const std::vector<DroneSpec>& fleet, double w,
                               const QualityDirectionConfig& cfg);

/// Skyline member maximizing cfg.to_sel; ties go to the lexicographically
/// smallest model label. Throws NoCapableDroneError when no drone can lift w.
DroneSpec block_nested_loop(const std::vector<DroneSpec>& fleet, double w,
                            const QualityDirectionConfig& cfg);

/// CSV loader, header:
/// model,payload_kg,flight_time_min,range_km,speed_kmh,recharge_min,battery_wh
std::vector<DroneSpec> load_fleet(const std::filesystem::path& drones_file);

} // namespace skyroute

#endif
