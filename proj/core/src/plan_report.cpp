#include "skyroute/report.hpp"

#include <fstream>

#include <json.hpp>

#include "skyroute/errors.hpp"

namespace skyroute {

namespace {

using nlohmann::json;

json drone_json(const DroneSpec& d) {
    return json{{"model", d.model},
                {"payload_kg", d.payload_capacity_kg},
                {"flight_time_min", d.max_flight_time_min},
                {"range_km", d.flight_range_km},
                {"speed_kmh", d.max_speed_kmh},
                {"recharge_min", d.full_recharge_min},
                {"battery_wh", d.battery_capacity_wh}};
}

json plan_json(const CompositionPlan& plan, int rank) {
    json legs = json::array();
    for (std::size_t i = 0; i < plan.legs.size(); ++i) {
        const PlanLeg& leg = plan.legs[i];
        json j{{"from", leg.from},
               {"to", leg.to},
               {"length_m", leg.length_m},
               {"service_time_min", leg.service_time_min},
               {"energy_fraction", leg.energy_fraction}};
        if (i < plan.station_estimates.size()) {
            const CongestionEstimate& est = plan.station_estimates[i];
            j["station"] = json{{"node", leg.to},
                                {"pr", est.pr},
                                {"wait_min", est.wait_min},
                                {"recharge_min", est.recharge_min}};
        }
        legs.push_back(std::move(j));
    }

    json out{{"rank", rank},
             {"nodes", plan.nodes},
             {"service_time_min", plan.base_time_min},
             {"distance_km", plan.distance_km},
             {"legs", std::move(legs)}};
    if (plan.extended_time_min) {
        out["delivery_time_min"] = *plan.extended_time_min;
        out["total_recharge_min"] = plan.total_recharge_min;
        out["total_wait_min"] = plan.total_wait_min;
        // the deterministic (perfect-knowledge) delivery time
        out["deterministic_delivery_time_min"] =
            plan.base_time_min + plan.total_recharge_min + plan.total_wait_min;
        out["final_battery_fraction"] = plan.final_battery_fraction;
    }
    return out;
}

} // namespace

std::string plan_report_json(const DeliveryQuery& query,
                             const std::vector<CompositionPlan>& plans) {
    json doc{{"query",
              json{{"source", query.source},
                   {"dest", query.dest},
                   {"start_min", query.start_min},
                   {"weight_kg", query.weight_kg}}}};
    if (!plans.empty()) doc["drone"] = drone_json(plans.front().drone);
    json arr = json::array();
    for (std::size_t i = 0; i < plans.size(); ++i)
        arr.push_back(plan_json(plans[i], static_cast<int>(i) + 1));
    doc["plans"] = std::move(arr);
    return doc.dump(2) + "\n";
}

void write_plan_report(const DeliveryQuery& query,
                       const std::vector<CompositionPlan>& plans,
                       const std::filesystem::path& out_file) {
    std::ofstream out(out_file);
    if (!out) throw IoError("cannot write " + out_file.string());
    out << plan_report_json(query, plans);
    if (!out.flush()) throw IoError("failed writing " + out_file.string());
}

} // namespace skyroute
