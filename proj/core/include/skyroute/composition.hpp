#ifndef SKYROUTE_COMPOSITION_HPP
#define SKYROUTE_COMPOSITION_HPP

#include <optional>
#include <vector>

#include "skyroute/congestion.hpp"
#include "skyroute/fleet.hpp"
#include "skyroute/network.hpp"
#include "skyroute/service_model.hpp"

namespace skyroute {

/// A package delivery request.
struct DeliveryQuery {
    NodeId source = 0;
    NodeId dest = 0;
    double start_min = 0.0; ///< query start time, minutes of day
    double weight_kg = 0.0;
};

/// One drone service: a directed traversal of a segment.
struct PlanLeg {
    SegmentId segment_id = 0;
    NodeId from = 0;
    NodeId to = 0;
    double length_m = 0.0;
    double service_time_min = 0.0;
    double energy_fraction = 0.0;
};

/// An ordered chain of drone services from source to destination,
/// executed by a single drone.
struct CompositionPlan {
    std::vector<NodeId> nodes; ///< node sequence, source first
    std::vector<PlanLeg> legs; ///< legs[i] flies nodes[i] -> nodes[i+1]
    DroneSpec drone;
    double base_time_min = 0.0; ///< S_n: sum of leg service times, in leg order
    double distance_km = 0.0;

    // set by extend_with_congestion
    std::optional<double> extended_time_min;             ///< T_n
    std::vector<CongestionEstimate> station_estimates;   ///< one per intermediate station
    double total_recharge_min = 0.0;                     ///< sum of R_i
    double total_wait_min = 0.0;                         ///< sum of W_i
    double final_battery_fraction = 1.0;

    std::size_t leg_count() const { return legs.size(); }
};

/// Up to k loopless source->dest paths with the smallest total service
/// time (Yen's algorithm over per-segment service times). Segments whose
/// energy need exceeds (1 - reserve) are excluded. Output is ordered by
/// (S_n, fewer legs, lexicographic node sequence). A query with
/// source == dest yields one empty plan with S_n = 0.
/// Throws UnreachableError when no feasible path exists.
std::vector<CompositionPlan> base_comps(const SkywayNetwork& net, const DeliveryQuery& query,
                                        int k, const DroneSpec& drone,
                                        const EnergyModelParams& params);

/// Stable ascending sort of plans by the paired times; ties broken by
/// fewer legs, then lexicographic node sequence.
std::vector<CompositionPlan> rank_comps(std::vector<CompositionPlan> plans,
                                        const std::vector<double>& times);

/// Walks the plan accumulating service time and, at each intermediate
/// station, the probability-weighted wait and recharge delay. Battery
/// bookkeeping applies the full physical recharge. Sets T_n, the per-leg
/// estimates and the wait/recharge totals.
CompositionPlan extend_with_congestion(const SkywayNetwork& net, CompositionPlan plan,
                                       const DeliveryQuery& query,
                                       const LoadProfileTable& profiles,
                                       const EnergyModelParams& params);

/// The two-phase engine: skyline drone selection, top-k compositions by
/// service time, congestion extension, re-rank by stochastic delivery
/// time. Head of the result is the best plan.
std::vector<CompositionPlan> top_k_composition(const SkywayNetwork& net,
                                               const std::vector<DroneSpec>& fleet,
                                               const DeliveryQuery& query, int k,
                                               const LoadProfileTable& profiles,
                                               const QualityDirectionConfig& cfg,
                                               const EnergyModelParams& params);

/// Every feasible simple path from source to dest with at most max_hops
/// legs (max_hops = 0 means the node count), as unextended plans in
/// deterministic enumeration order.
std::vector<CompositionPlan> enumerate_feasible_plans(const SkywayNetwork& net,
                                                      const DeliveryQuery& query,
                                                      const DroneSpec& drone,
                                                      const EnergyModelParams& params,
                                                      std::size_t max_hops = 0);

/// Baseline: enumerate all feasible simple paths, extend each with
/// congestion, return the minimum-T_n plan (ties as in rank_comps).
CompositionPlan exhaustive_composition(const SkywayNetwork& net,
                                       const std::vector<DroneSpec>& fleet,
                                       const DeliveryQuery& query,
                                       const LoadProfileTable& profiles,
                                       const QualityDirectionConfig& cfg,
                                       const EnergyModelParams& params,
                                       std::size_t max_hops = 0);

} // namespace skyroute

#endif
