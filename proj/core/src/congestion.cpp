#include "skyroute/congestion.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <stdexcept>

#include "skyroute/csv.hpp"
#include "skyroute/errors.hpp"

namespace skyroute {

double StationLoadProfile::rate_at(double minute_of_day) const {
    double t = std::fmod(minute_of_day, kMinutesPerDay);
    if (t < 0.0) t += kMinutesPerDay;
    // last breakpoint with start_min <= t; schedule starts at 0
    double rate = schedule.front().rate_per_hour;
    for (const RateBreakpoint& bp : schedule) {
        if (bp.start_min > t) break;
        rate = bp.rate_per_hour;
    }
    return rate;
}

void StationLoadProfile::validate() const {
    if (schedule.empty())
        throw IntegrityError("load profile: empty rate schedule");
    if (schedule.front().start_min != 0.0)
        throw IntegrityError("load profile: first breakpoint must start at minute 0");
    double prev = -1.0;
    for (const RateBreakpoint& bp : schedule) {
        if (bp.start_min <= prev)
            throw IntegrityError("load profile: breakpoints must be strictly increasing");
        if (bp.start_min >= kMinutesPerDay)
            throw IntegrityError("load profile: breakpoint outside [0, 1440)");
        if (bp.rate_per_hour < 0.0)
            throw IntegrityError("load profile: negative arrival rate");
        prev = bp.start_min;
    }
    if (mean_occupancy_min <= 0.0)
        throw IntegrityError("load profile: mean occupancy must be positive");
}

double erlang_c_wait_probability(double offered_load, int servers) {
    if (servers < 1) throw std::invalid_argument("servers must be >= 1");
    if (offered_load <= 0.0) return 0.0;
    if (offered_load >= static_cast<double>(servers)) return 1.0;

    // Erlang-B recursion, then the standard B-to-C conversion.
    double blocking = 1.0;
    for (int k = 1; k <= servers; ++k)
        blocking = offered_load * blocking / (static_cast<double>(k) + offered_load * blocking);
    const double rho = offered_load / static_cast<double>(servers);
    return blocking / (1.0 - rho * (1.0 - blocking));
}

CongestionEstimate probability_wait_recharge(const StationLoadProfile& profile, int pads,
                                             double arrival_min, double recharge_needed_min,
                                             double saturation_cap_min) {
    if (pads < 1) throw std::invalid_argument("pads must be >= 1");
    if (recharge_needed_min < 0.0)
        throw std::invalid_argument("recharge_needed_min must be >= 0");

    CongestionEstimate est;
    est.recharge_min = recharge_needed_min;

    const double rate_per_min = profile.rate_at(arrival_min) / 60.0;
    if (rate_per_min <= 0.0) return est; // empty system: pr = 0, wait = 0

    const double offered_load = rate_per_min * profile.mean_occupancy_min;
    if (offered_load >= static_cast<double>(pads)) {
        est.pr = 1.0;
        est.wait_min = saturation_cap_min;
        return est;
    }
    est.pr = erlang_c_wait_probability(offered_load, pads);
    // mean delay of the arrivals that do wait: Exp(c*mu - lambda)
    est.wait_min = profile.mean_occupancy_min / (static_cast<double>(pads) - offered_load);
    return est;
}

SimulatedCongestion simulate_station(const StationLoadProfile& profile, int pads,
                                     double horizon_min, std::size_t samples) {
    if (pads < 1) throw std::invalid_argument("pads must be >= 1");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    profile.validate();

    double max_rate = 0.0;
    for (const RateBreakpoint& bp : profile.schedule)
        max_rate = std::max(max_rate, bp.rate_per_hour);
    if (max_rate <= 0.0) return {0.0, 0.0};

    std::mt19937_64 rng(profile.seed);
    std::exponential_distribution<double> interarrival(max_rate / 60.0);
    std::exponential_distribution<double> service(1.0 / profile.mean_occupancy_min);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    // FIFO multi-server queue tracked as the times each pad next frees up.
    std::priority_queue<double, std::vector<double>, std::greater<>> pad_free;
    for (int i = 0; i < pads; ++i) pad_free.push(0.0);

    const std::size_t warmup = samples / 10;
    std::size_t arrivals = 0;
    std::size_t measured = 0;
    std::size_t waited = 0;
    double wait_sum = 0.0;
    double now = 0.0;

    while (arrivals < samples) {
        now += interarrival(rng);
        if (now > horizon_min) break;
        // thinning: keep the arrival with probability rate(t)/max_rate
        if (uniform(rng) * max_rate > profile.rate_at(now)) continue;
        ++arrivals;

        const double free_at = pad_free.top();
        pad_free.pop();
        const double start = std::max(now, free_at);
        pad_free.push(start + service(rng));

        if (arrivals <= warmup) continue;
        ++measured;
        if (free_at > now) {
            ++waited;
            wait_sum += free_at - now;
        }
    }

    if (measured == 0) return {0.0, 0.0};
    SimulatedCongestion out;
    out.pr = static_cast<double>(waited) / static_cast<double>(measured);
    out.wait_min = waited > 0 ? wait_sum / static_cast<double>(waited) : 0.0;
    return out;
}

LoadProfileTable::LoadProfileTable(StationLoadProfile baseline)
    : baseline_(std::move(baseline)) {
    baseline_.validate();
}

LoadProfileTable LoadProfileTable::zero() {
    StationLoadProfile idle;
    idle.schedule = {{0.0, 0.0}};
    return LoadProfileTable(idle);
}

void LoadProfileTable::set(StationLoadProfile profile) {
    profile.validate();
    profiles_[profile.node_id] = std::move(profile);
}

const StationLoadProfile& LoadProfileTable::for_node(NodeId id) const {
    const auto it = profiles_.find(id);
    return it == profiles_.end() ? baseline_ : it->second;
}

LoadProfileTable LoadProfileTable::load(const std::filesystem::path& profiles_file,
                                        StationLoadProfile baseline) {
    LoadProfileTable table(std::move(baseline));
    const csv::Table csv_table = csv::read_file(profiles_file);
    const int col_node = csv_table.column("node_id");
    const int col_break = csv_table.column("breakpoint_min");
    const int col_rate = csv_table.column("rate_per_hour");
    const int col_occ = csv_table.column("mean_occupancy_min");
    const int col_seed = csv_table.column("seed");
    if (col_node < 0 || col_break < 0 || col_rate < 0 || col_occ < 0 || col_seed < 0)
        throw ParseError(profiles_file.string() +
                         ": header must contain node_id,breakpoint_min,rate_per_hour,"
                         "mean_occupancy_min,seed");

    std::map<NodeId, StationLoadProfile> parsed;
    for (const auto& row : csv_table.rows) {
        const NodeId id = csv::to_int(csv_table, row, col_node);
        auto [it, inserted] = parsed.try_emplace(id);
        StationLoadProfile& p = it->second;
        if (inserted) {
            p.node_id = id;
            p.schedule.clear();
        }
        p.schedule.push_back({csv::to_double(csv_table, row, col_break),
                              csv::to_double(csv_table, row, col_rate)});
        p.mean_occupancy_min = csv::to_double(csv_table, row, col_occ);
        p.seed = csv::to_uint(csv_table, row, col_seed);
    }
    for (auto& [id, profile] : parsed) {
        std::sort(profile.schedule.begin(), profile.schedule.end(),
                  [](const RateBreakpoint& a, const RateBreakpoint& b) {
                      return a.start_min < b.start_min;
                  });
        table.set(std::move(profile));
    }
    return table;
}

} // namespace skyroute
