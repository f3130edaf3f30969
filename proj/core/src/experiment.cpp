#include "skyroute/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "skyroute/csv.hpp"
#include "skyroute/errors.hpp"

namespace skyroute {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ParseError("config key '" + key + "': '" + value + "' is not a number");
    return out;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    std::int64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ParseError("config key '" + key + "': '" + value + "' is not an integer");
    return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(static_cast<int>(parse_int(key, trim(item))));
    if (out.empty()) throw ParseError("config key '" + key + "': empty list");
    return out;
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt_a, std::uint64_t salt_b) {
    // splitmix64 finalizer over the mixed words
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (salt_a + 1) +
                      0xbf58476d1ce4e5b9ULL * (salt_b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    if (key == "nodes") nodes_file = value;
    else if (key == "edges") edges_file = value;
    else if (key == "drones") drones_file = value;
    else if (key == "profiles") profiles_file = value;
    else if (key == "node_counts") node_counts = parse_int_list(key, value);
    else if (key == "k_values") k_values = parse_int_list(key, value);
    else if (key == "pads_per_station") pads_per_station = static_cast<int>(parse_int(key, value));
    else if (key == "runs_fraction") runs_fraction = parse_double(key, value);
    else if (key == "master_seed") master_seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "package_weight_kg") package_weight_kg = parse_double(key, value);
    else if (key == "speed_payload_factor") energy.speed_payload_factor = parse_double(key, value);
    else if (key == "range_payload_factor") energy.range_payload_factor = parse_double(key, value);
    else if (key == "reserve_fraction") energy.reserve_fraction = parse_double(key, value);
    else if (key == "baseline_rate_per_hour") baseline_rate_per_hour = parse_double(key, value);
    else if (key == "baseline_occupancy_min") baseline_occupancy_min = parse_double(key, value);
    else if (key == "saturation_cap_min") saturation_cap_min = parse_double(key, value);
    else if (key == "max_hops") max_hops = static_cast<std::size_t>(parse_int(key, value));
    else if (key == "query_retry_limit") query_retry_limit = static_cast<int>(parse_int(key, value));
    else throw ParseError("unknown config key '" + key + "'");
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    ExperimentConfig config;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": expected key=value");
        try {
            config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return config;
}

void ExperimentConfig::validate() const {
    skyroute::validate(energy);
    if (node_counts.empty()) throw ConfigError("node_counts must be non-empty");
    for (const int n : node_counts)
        if (n < 2) throw ConfigError("node_counts entries must be >= 2");
    if (k_values.empty()) throw ConfigError("k_values must be non-empty");
    for (const int k : k_values)
        if (k < 1) throw ConfigError("k_values entries must be >= 1");
    if (pads_per_station < 1) throw ConfigError("pads_per_station must be >= 1");
    if (!(runs_fraction > 0.0 && runs_fraction <= 1.0))
        throw ConfigError("runs_fraction must be in (0, 1]");
    if (package_weight_kg < 0.0) throw ConfigError("package_weight_kg must be >= 0");
    if (baseline_rate_per_hour < 0.0) throw ConfigError("baseline_rate_per_hour must be >= 0");
    if (baseline_occupancy_min <= 0.0) throw ConfigError("baseline_occupancy_min must be > 0");
    if (query_retry_limit < 1) throw ConfigError("query_retry_limit must be >= 1");
}

namespace {

SkywayNetwork override_pads(const SkywayNetwork& net, int pads) {
    std::vector<NodeRecord> nodes = net.nodes();
    for (NodeRecord& n : nodes) n.pad_count = pads;
    return SkywayNetwork(std::move(nodes), net.segments());
}

LoadProfileTable make_profiles(const ExperimentConfig& config) {
    StationLoadProfile baseline;
    baseline.schedule = {{0.0, config.baseline_rate_per_hour}};
    baseline.mean_occupancy_min = config.baseline_occupancy_min;
    baseline.seed = derive_seed(config.master_seed, 0xba5e11e);
    LoadProfileTable table = config.profiles_file.empty()
                                 ? LoadProfileTable(baseline)
                                 : LoadProfileTable::load(config.profiles_file, baseline);
    table.set_saturation_cap_min(config.saturation_cap_min);
    return table;
}

} // namespace

std::vector<MetricsRecord> run_experiment(const ExperimentConfig& config,
                                          const SkywayNetwork& network,
                                          const std::vector<DroneSpec>& fleet) {
    config.validate();
    const LoadProfileTable profiles = make_profiles(config);
    const QualityDirectionConfig quality = QualityDirectionConfig::defaults();
    using clock = std::chrono::steady_clock;

    std::vector<MetricsRecord> records;
    for (const int node_count : config.node_counts) {
        const std::uint64_t subnet_seed =
            derive_seed(config.master_seed, 0x50b0, static_cast<std::uint64_t>(node_count));
        const SkywayNetwork sub = override_pads(
            extract_subnetwork(network, static_cast<std::size_t>(node_count), subnet_seed),
            config.pads_per_station);
        const std::size_t max_hops =
            config.max_hops == 0 ? sub.node_count() : config.max_hops;

        const int runs = static_cast<int>(
            std::ceil(config.runs_fraction * static_cast<double>(node_count)));
        for (int run = 0; run < runs; ++run) {
            const std::uint64_t run_seed = derive_seed(
                config.master_seed, static_cast<std::uint64_t>(node_count),
                static_cast<std::uint64_t>(run) + 1);
            std::mt19937_64 rng(run_seed);
            std::uniform_int_distribution<std::size_t> pick(0, sub.node_count() - 1);
            std::uniform_int_distribution<int> minute(0, 1439);

            // draw a query; re-draw (bounded) when the pair is unreachable
            DeliveryQuery query;
            bool feasible = false;
            for (int attempt = 0; attempt < config.query_retry_limit && !feasible; ++attempt) {
                const std::size_t si = pick(rng);
                std::size_t di = pick(rng);
                while (di == si) di = pick(rng);
                query.source = sub.nodes()[si].node_id;
                query.dest = sub.nodes()[di].node_id;
                query.start_min = static_cast<double>(minute(rng));
                query.weight_kg = config.package_weight_kg;
                // NoCapableDroneError propagates: no draw can fix the weight
                const DroneSpec drone = block_nested_loop(fleet, query.weight_kg, quality);
                try {
                    base_comps(sub, query, 1, drone, config.energy);
                    feasible = true;
                } catch (const UnreachableError&) {
                }
            }
            if (!feasible) {
                std::cerr << "skyroute: skipping run " << run << " at " << node_count
                          << " nodes: no feasible query after "
                          << config.query_retry_limit << " draws\n";
                continue;
            }

            // exhaustive baseline first, then each top-k on the identical query
            {
                const auto t0 = clock::now();
                const CompositionPlan best = exhaustive_composition(
                    sub, fleet, query, profiles, quality, config.energy, max_hops);
                const auto t1 = clock::now();
                records.push_back({"exhaustive", node_count, run,
                                   std::chrono::duration<double, std::milli>(t1 - t0).count(),
                                   *best.extended_time_min, best.distance_km, run_seed});
            }
            for (const int k : config.k_values) {
                const auto t0 = clock::now();
                const std::vector<CompositionPlan> ranked = top_k_composition(
                    sub, fleet, query, k, profiles, quality, config.energy);
                const auto t1 = clock::now();
                records.push_back({"top-" + std::to_string(k), node_count, run,
                                   std::chrono::duration<double, std::milli>(t1 - t0).count(),
                                   *ranked.front().extended_time_min,
                                   ranked.front().distance_km, run_seed});
            }
        }
    }
    return records;
}

namespace {

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Stats {
    int n = 0;
    double mean = 0.0;
    double m2 = 0.0;
    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }
    double stddev() const { return n > 1 ? std::sqrt(m2 / (n - 1)) : 0.0; }
};

} // namespace

void emit_report(const std::vector<MetricsRecord>& records,
                 const std::filesystem::path& out_dir) {
    if (records.empty()) throw ConfigError("emit_report: no records");
    std::filesystem::create_directories(out_dir);

    std::ofstream metrics(out_dir / "metrics.csv");
    if (!metrics) throw IoError("cannot write " + (out_dir / "metrics.csv").string());
    metrics << "method,node_count,run_index,execution_time_ms,delivery_time_min,"
               "distance_km,seed\n";
    for (const MetricsRecord& r : records)
        metrics << r.method << ',' << r.node_count << ',' << r.run_index << ','
                << fmt6(r.execution_time_ms) << ',' << fmt6(r.delivery_time_min) << ','
                << fmt6(r.distance_km) << ',' << r.seed << '\n';
    if (!metrics.flush()) throw IoError("failed writing metrics.csv");

    // per (node_count, method) aggregates, in that order
    std::map<std::pair<int, std::string>, std::array<Stats, 3>> groups;
    for (const MetricsRecord& r : records) {
        auto& g = groups[{r.node_count, r.method}];
        g[0].add(r.execution_time_ms);
        g[1].add(r.delivery_time_min);
        g[2].add(r.distance_km);
    }
    std::ofstream summary(out_dir / "summary.csv");
    if (!summary) throw IoError("cannot write " + (out_dir / "summary.csv").string());
    summary << "method,node_count,runs,mean_execution_time_ms,stddev_execution_time_ms,"
               "mean_delivery_time_min,stddev_delivery_time_min,mean_distance_km,"
               "stddev_distance_km\n";
    for (const auto& [key, g] : groups)
        summary << key.second << ',' << key.first << ',' << g[0].n << ','
                << fmt6(g[0].mean) << ',' << fmt6(g[0].stddev()) << ','
                << fmt6(g[1].mean) << ',' << fmt6(g[1].stddev()) << ','
                << fmt6(g[2].mean) << ',' << fmt6(g[2].stddev()) << '\n';
    if (!summary.flush()) throw IoError("failed writing summary.csv");
}

std::vector<MetricsRecord> load_metrics_csv(const std::filesystem::path& path) {
    const csv::Table table = csv::read_file(path);
    const int col_method = table.column("method");
    const int col_nodes = table.column("node_count");
    const int col_run = table.column("run_index");
    const int col_exec = table.column("execution_time_ms");
    const int col_time = table.column("delivery_time_min");
    const int col_dist = table.column("distance_km");
    const int col_seed = table.column("seed");
    if (col_method < 0 || col_nodes < 0 || col_run < 0 || col_exec < 0 || col_time < 0 ||
        col_dist < 0 || col_seed < 0)
        throw ParseError(path.string() + ": not a metrics.csv header");

    std::vector<MetricsRecord> records;
    records.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        MetricsRecord r;
        r.method = row.fields.at(col_method);
        r.node_count = static_cast<int>(csv::to_int(table, row, col_nodes));
        r.run_index = static_cast<int>(csv::to_int(table, row, col_run));
        r.execution_time_ms = csv::to_double(table, row, col_exec);
        r.delivery_time_min = csv::to_double(table, row, col_time);
        r.distance_km = csv::to_double(table, row, col_dist);
        r.seed = csv::to_uint(table, row, col_seed);
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace skyroute
