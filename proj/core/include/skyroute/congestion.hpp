#ifndef SKYROUTE_CONGESTION_HPP
#define SKYROUTE_CONGESTION_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include "skyroute/network.hpp"

namespace skyroute {

inline constexpr double kMinutesPerDay = 1440.0;
inline constexpr double kDefaultSaturationCapMin = 240.0;

struct RateBreakpoint {
    double start_min = 0.0;     ///< minute-of-day where this rate begins
    double rate_per_hour = 0.0; ///< drone arrivals per hour
};

/// Piecewise-constant arrival-rate schedule over one day plus the mean
/// pad-holding time of other drones at this station.
struct StationLoadProfile {
    NodeId node_id = -1;
    std::vector<RateBreakpoint> schedule{{0.0, 0.0}};
    double mean_occupancy_min = 30.0;
    std::uint64_t seed = 0;

    /// Arrival rate (per hour) in effect at a minute of day (reduced mod 1440).
    double rate_at(double minute_of_day) const;

    /// Rates >= 0, breakpoints strictly increasing starting at 0. Throws IntegrityError.
    void validate() const;
};

/// The (Pr, W, R) triple for one station at one arrival time.
struct CongestionEstimate {
    double pr = 0.0;           ///< probability that all pads are busy
    double wait_min = 0.0;     ///< expected queueing delay given waiting
    double recharge_min = 0.0; ///< recharge duration at this station
};

/// Erlang-C probability that an arrival to a c-server exponential queue
/// must wait. Returns 1 when offered_load >= servers (saturated).
double erlang_c_wait_probability(double offered_load, int servers);

/// Analytic M/M/c estimate for one station: pr from Erlang-C, wait is the
/// expected delay of delayed arrivals, recharge passes through. Saturated
/// stations report pr = 1 and wait = saturation_cap_min. Pure function.
CongestionEstimate probability_wait_recharge(const StationLoadProfile& profile, int pads,
                                             double arrival_min, double recharge_needed_min,
                                             double saturation_cap_min = kDefaultSaturationCapMin);

struct SimulatedCongestion {
    double pr = 0.0;       ///< fraction of arrivals finding all pads busy
    double wait_min = 0.0; ///< mean wait among arrivals that waited
};

/// Seeded discrete-event simulation of the same multi-pad station queue;
/// `samples` arrivals are generated (the first tenth is warm-up and not
/// measured), never simulating past `horizon_min`. Deterministic given
/// profile.seed.
SimulatedCongestion simulate_station(const StationLoadProfile& profile, int pads,
                                     double horizon_min, std::size_t samples);

/// Per-station profiles with a baseline fallback for unlisted nodes.
class LoadProfileTable {
public:
    LoadProfileTable() = default;
    explicit LoadProfileTable(StationLoadProfile baseline);

    /// Zero-rate baseline: every station idle, no congestion anywhere.
    static LoadProfileTable zero();

    void set(StationLoadProfile profile);
    const StationLoadProfile& for_node(NodeId id) const;
    const StationLoadProfile& baseline() const { return baseline_; }

    double saturation_cap_min() const { return saturation_cap_min_; }
    void set_saturation_cap_min(double cap) { saturation_cap_min_ = cap; }

    /// CSV loader, header:
    /// node_id,breakpoint_min,rate_per_hour,mean_occupancy_min,seed
    /// (one row per breakpoint; rows of one node must be contiguous or at
    /// least share occupancy/seed). Unlisted nodes fall back to `baseline`.
    static LoadProfileTable load(const std::filesystem::path& profiles_file,
                                 StationLoadProfile baseline);

private:
    StationLoadProfile baseline_;
    std::map<NodeId, StationLoadProfile> profiles_;
    double saturation_cap_min_ = kDefaultSaturationCapMin;
};

} // namespace skyroute

#endif
