#include "skyroute/fleet.hpp"

#include <algorithm>

#include "skyroute/csv.hpp"
#include "skyroute/errors.hpp"

namespace skyroute {

void validate(const DroneSpec& drone) {
    const auto positive = [&](double v, const char* what) {
        if (!(v > 0.0))
            throw IntegrityError("drone '" + drone.model + "': " + what +
                                 " must be strictly positive");
    };
    positive(drone.payload_capacity_kg, "payload capacity");
    positive(drone.max_flight_time_min, "flight time");
    positive(drone.flight_range_km, "flight range");
    positive(drone.max_speed_kmh, "speed");
    positive(drone.full_recharge_min, "recharge duration");
    positive(drone.battery_capacity_wh, "battery capacity");

    const double reachable_km = drone.max_speed_kmh * drone.max_flight_time_min / 60.0;
    if (drone.flight_range_km > reachable_km * 1.05)
        throw IntegrityError("drone '" + drone.model + "': flight range " +
                             csv::format_double(drone.flight_range_km) +
                             " km exceeds speed x flight time (" +
                             csv::format_double(reachable_km) + " km)");
}

double quality_field(const DroneSpec& drone, std::string_view name) {
    if (name == "payload_capacity") return drone.payload_capacity_kg;
    if (name == "max_flight_time") return drone.max_flight_time_min;
    if (name == "flight_range") return drone.flight_range_km;
    if (name == "max_speed") return drone.max_speed_kmh;
    if (name == "full_recharge_duration") return drone.full_recharge_min;
    if (name == "battery_capacity") return drone.battery_capacity_wh;
    throw ConfigError("unknown quality field '" + std::string(name) + "'");
}

QualityDirectionConfig QualityDirectionConfig::defaults() {
    QualityDirectionConfig cfg;
    cfg.to_min = {"full_recharge_duration"};
    cfg.to_max = {"payload_capacity", "flight_range", "max_speed", "max_flight_time",
                  "battery_capacity"};
    cfg.to_sel = "flight_range";
    return cfg;
}

void QualityDirectionConfig::validate() const {
    const DroneSpec probe{"probe", 1, 1, 1, 1, 1, 1};
    for (const auto& f : to_min) {
        quality_field(probe, f);
        if (to_max.contains(f))
            throw ConfigError("quality field '" + f + "' is in both to_min and to_max");
    }
    for (const auto& f : to_max) quality_field(probe, f);
    if (!to_min.contains(to_sel) && !to_max.contains(to_sel))
        throw ConfigError("to_sel '" + to_sel + "' is not in to_min or to_max");
}

std::pair<int, int> count_diff(const DroneSpec& a, const DroneSpec& b,
                               const QualityDirectionConfig& cfg) {
    int better = 0;
    int worse = 0;
    for (const auto& f : cfg.to_min) {
        const double av = quality_field(a, f);
        const double bv = quality_field(b, f);
        if (av < bv) ++better;
        if (av > bv) ++worse;
    }
    for (const auto& f : cfg.to_max) {
        const double av = quality_field(a, f);
        const double bv = quality_field(b, f);
        if (av > bv) ++better;
        if (av < bv) ++worse;
    }
    return {better, worse};
}

std::vector<DroneSpec> filter_by_payload(const std::vector<DroneSpec>& fleet, double w) {
    std::vector<DroneSpec> out;
    for (const DroneSpec& d : fleet)
        if (d.payload_capacity_kg >= w) out.push_back(d);
    return out;
}

std::vector<DroneSpec> skyline(const std::vector<DroneSpec>& fleet, double w,
                               const QualityDirectionConfig& cfg) {
    cfg.validate();
    const std::vector<DroneSpec> candidates = filter_by_payload(fleet, w);

    // Block-nested-loop: keep a window of mutually non-dominated drones.
    std::vector<DroneSpec> window;
    for (const DroneSpec& drone : candidates) {
        bool dominated = false;
        std::vector<std::size_t> evicted;
        for (std::size_t i = 0; i < window.size(); ++i) {
            const auto [better, worse] = count_diff(drone, window[i], cfg);
            if (worse > 0 && better == 0) {
                dominated = true;
                break;
            }
            if (better > 0 && worse == 0) evicted.push_back(i);
        }
        if (dominated) continue;
        for (auto it = evicted.rbegin(); it != evicted.rend(); ++it)
            window.erase(window.begin() + static_cast<std::ptrdiff_t>(*it));
        window.push_back(drone);
    }
    return window;
}

DroneSpec block_nested_loop(const std::vector<DroneSpec>& fleet, double w,
                            const QualityDirectionConfig& cfg) {
    const std::vector<DroneSpec> sky = skyline(fleet, w, cfg);
    if (sky.empty())
        throw NoCapableDroneError("no drone can lift " + csv::format_double(w) + " kg");

    const DroneSpec* best = &sky.front();
    for (const DroneSpec& d : sky) {
        const double dv = quality_field(d, cfg.to_sel);
        const double bv = quality_field(*best, cfg.to_sel);
        if (dv > bv || (dv == bv && d.model < best->model)) best = &d;
    }
    return *best;
}

std::vector<DroneSpec> load_fleet(const std::filesystem::path& drones_file) {
    const csv::Table table = csv::read_file(drones_file);
    const int col_model = table.column("model");
    const int col_payload = table.column("payload_kg");
    const int col_time = table.column("flight_time_min");
    const int col_range = table.column("range_km");
    const int col_speed = table.column("speed_kmh");
    const int col_recharge = table.column("recharge_min");
    const int col_battery = table.column("battery_wh");
    if (col_model < 0 || col_payload < 0 || col_time < 0 || col_range < 0 ||
        col_speed < 0 || col_recharge < 0 || col_battery < 0)
        throw ParseError(drones_file.string() +
                         ": header must contain model,payload_kg,flight_time_min,"
                         "range_km,speed_kmh,recharge_min,battery_wh");

    std::vector<DroneSpec> fleet;
    fleet.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        DroneSpec d;
        d.model = row.fields.at(col_model);
        d.payload_capacity_kg = csv::to_double(table, row, col_payload);
        d.max_flight_time_min = csv::to_double(table, row, col_time);
        d.flight_range_km = csv::to_double(table, row, col_range);
        d.max_speed_kmh = csv::to_double(table, row, col_speed);
        d.full_recharge_min = csv::to_double(table, row, col_recharge);
        d.battery_capacity_wh = csv::to_double(table, row, col_battery);
        validate(d);
        fleet.push_back(std::move(d));
    }
    return fleet;
}

} // namespace skyroute
