#ifndef SKYROUTE_EXPERIMENT_HPP
#define SKYROUTE_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "skyroute/composition.hpp"

namespace skyroute {

/// Everything a benchmark run needs. Loadable from a flat key=value file;
/// every field is addressable by the key named in from_file().
struct ExperimentConfig {
    std::string nodes_file;
    std::string edges_file;
    std::string drones_file;
    std::string profiles_file; ///< optional; empty = baseline everywhere

    std::vector<int> node_counts{10, 20, 30, 40};
    std::vector<int> k_values{3, 4, 5};
    int pads_per_station = 3;
    double runs_fraction = 0.5; ///< runs per node count = ceil(fraction * nodes)
    std::uint64_t master_seed = 1;
    double package_weight_kg = 1.0;

    EnergyModelParams energy;
    double baseline_rate_per_hour = 4.0;
    double baseline_occupancy_min = 30.0;
    double saturation_cap_min = kDefaultSaturationCapMin;
    std::size_t max_hops = 0; ///< 0 = node count of the extracted subnetwork
    int query_retry_limit = 20;

    /// Parses `key = value` lines ('#' comments, blank lines allowed).
    /// Unknown keys are ParseErrors. Values are validated on use.
    static ExperimentConfig from_file(const std::filesystem::path& path);

    /// Applies one `key=value` override (same keys as the file).
    void set(const std::string& key, const std::string& value);

    void validate() const; ///< throws ConfigError
};

/// One measured composition run.
struct MetricsRecord {
    std::string method; ///< "exhaustive" or "top-<k>"
    int node_count = 0;
    int run_index = 0;
    double execution_time_ms = 0.0; ///< wall clock around the composition call only
    double delivery_time_min = 0.0; ///< T_n of the winning plan
    double distance_km = 0.0;
    std::uint64_t seed = 0; ///< per-run query seed
};

/// Executes the full benchmark: per node count, extract a seeded
/// subnetwork, draw seeded queries, and run the exhaustive baseline plus
/// every top-k method on identical inputs. Deterministic apart from the
/// execution_time_ms column. Unreachable query draws are retried up to
/// the configured limit, then the run is skipped with a note on stderr.
std::vector<MetricsRecord> run_experiment(const ExperimentConfig& config,
                                          const SkywayNetwork& network,
                                          const std::vector<DroneSpec>& fleet);

/// Writes metrics.csv (one row per record) and summary.csv (mean/stddev
/// per method x node_count) into out_dir. Floats carry 6 significant digits.
void emit_report(const std::vector<MetricsRecord>& records,
                 const std::filesystem::path& out_dir);

/// Parses a metrics.csv produced by emit_report.
std::vector<MetricsRecord> load_metrics_csv(const std::filesystem::path& path);

/// splitmix64 mix of a seed with a sequence of salts; the deterministic
/// seed-derivation scheme used throughout the harness.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt_a,
                          std::uint64_t salt_b = 0);

} // namespace skyroute

#endif
