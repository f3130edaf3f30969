#ifndef SKYROUTE_SERVICE_MODEL_HPP
#define SKYROUTE_SERVICE_MODEL_HPP

#include "skyroute/fleet.hpp"
#include "skyroute/network.hpp"

namespace skyroute {

/// Linear payload-degradation model coefficients.
struct EnergyModelParams {
    double speed_payload_factor = 0.2;  ///< fraction of speed lost at full payload
    double range_payload_factor = 0.3;  ///< fraction of range lost at full payload
    double reserve_fraction = 0.1;      ///< battery fraction kept unused per leg
};

/// Factors must lie in [0, 1), the reserve in [0, 0.5]. Throws ConfigError.
void validate(const EnergyModelParams& params);

/// Mutable flight state carried through a composition.
struct DroneState {
    double battery_fraction = 1.0;
    double payload_kg = 0.0;
};

/// Minutes to fly one segment: length / (max_speed * (1 - alpha * payload/capacity)).
/// Throws InfeasibleError when payload exceeds the drone's capacity.
double service_time_min(const Segment& seg, const DroneSpec& drone, double payload_kg,
                        const EnergyModelParams& params = {});

/// Battery fraction to fly one segment:
/// length / (flight_range * (1 - beta * payload/capacity)). May exceed 1;
/// callers treat > (1 - reserve) as segment-infeasible.
double energy_consumption(const Segment& seg, const DroneSpec& drone, double payload_kg,
                          const EnergyModelParams& params = {});

struct RechargeResult {
    double duration_min = 0.0;
    double battery_fraction = 0.0;
};

/// Linear partial recharge up to next-leg need plus reserve. Zero duration
/// when the battery already covers the target. Throws InfeasibleError when
/// next_leg_energy + reserve exceeds a full battery.
RechargeResult partial_recharge_time(const DroneSpec& drone, const DroneState& state,
                                     double next_leg_energy,
                                     const EnergyModelParams& params);

} // namespace skyroute

#endif
