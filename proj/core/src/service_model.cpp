#include "skyroute/service_model.hpp"

#include <algorithm>

#include "skyroute/csv.hpp"
#include "skyroute/errors.hpp"

namespace skyroute {

namespace {

void check_payload(const DroneSpec& drone, double payload_kg) {
    if (payload_kg > drone.payload_capacity_kg)
        throw InfeasibleError("payload " + csv::format_double(payload_kg) +
                              " kg exceeds capacity of '" + drone.model + "' (" +
                              csv::format_double(drone.payload_capacity_kg) + " kg)");
}

} // namespace

void validate(const EnergyModelParams& params) {
    if (!(params.speed_payload_factor >= 0.0 && params.speed_payload_factor < 1.0))
        throw ConfigError("speed_payload_factor must be in [0, 1)");
    if (!(params.range_payload_factor >= 0.0 && params.range_payload_factor < 1.0))
        throw ConfigError("range_payload_factor must be in [0, 1)");
    if (!(params.reserve_fraction >= 0.0 && params.reserve_fraction <= 0.5))
        throw ConfigError("reserve_fraction must be in [0, 0.5]");
}

double service_time_min(const Segment& seg, const DroneSpec& drone, double payload_kg,
                        const EnergyModelParams& params) {
    check_payload(drone, payload_kg);
    const double load = payload_kg / drone.payload_capacity_kg;
    const double effective_speed_kmh =
        drone.max_speed_kmh * (1.0 - params.speed_payload_factor * load);
    return seg.length_m / 1000.0 / effective_speed_kmh * 60.0;
}

double energy_consumption(const Segment& seg, const DroneSpec& drone, double payload_kg,
                          const EnergyModelParams& params) {
    check_payload(drone, payload_kg);
    const double load = payload_kg / drone.payload_capacity_kg;
    const double effective_range_km =
        drone.flight_range_km * (1.0 - params.range_payload_factor * load);
    return seg.length_m / 1000.0 / effective_range_km;
}

RechargeResult partial_recharge_time(const DroneSpec& drone, const DroneState& state,
                                     double next_leg_energy,
                                     const EnergyModelParams& params) {
    if (next_leg_energy + params.reserve_fraction > 1.0)
        throw InfeasibleError("segment needs " + csv::format_double(next_leg_energy) +
                              " of battery plus " +
                              csv::format_double(params.reserve_fraction) +
                              " reserve; not flyable by '" + drone.model + "'");
    const double target = std::min(1.0, next_leg_energy + params.reserve_fraction);
    if (state.battery_fraction >= target) return {0.0, state.battery_fraction};
    return {(target - state.battery_fraction) * drone.full_recharge_min, target};
}

} // namespace skyroute
