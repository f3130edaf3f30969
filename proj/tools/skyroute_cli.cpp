// skyroute command-line front end: compose one delivery, run the benchmark
// experiment, or extract a connected subnetwork.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skyroute/composition.hpp"
#include "skyroute/errors.hpp"
#include "skyroute/experiment.hpp"
#include "skyroute/report.hpp"

namespace {

constexpr int kExitInfeasible = 2;
constexpr int kExitInputError = 3;

struct ComposeOptions {
    std::string nodes, edges, drones, profiles;
    skyroute::NodeId source = 0;
    skyroute::NodeId dest = 0;
    double weight_kg = 0.0;
    double start_min = 0.0;
    int k = 3;
    bool exhaustive = false;
    std::string json_out;
    std::size_t max_hops = 0;
    double baseline_rate = 0.0;
    double baseline_occupancy = 30.0;
    double saturation_cap = skyroute::kDefaultSaturationCapMin;
    skyroute::EnergyModelParams energy;
};

void print_plan(const skyroute::CompositionPlan& plan, int rank) {
    std::cout << "#" << rank << "  S_n " << plan.base_time_min << " min";
    if (plan.extended_time_min) std::cout << "  T_n " << *plan.extended_time_min << " min";
    std::cout << "  " << plan.distance_km << " km  nodes";
    for (const skyroute::NodeId n : plan.nodes) std::cout << ' ' << n;
    std::cout << '\n';
}

int run_compose(const ComposeOptions& opt) {
    skyroute::validate(opt.energy);
    const skyroute::SkywayNetwork net = skyroute::load_network(opt.nodes, opt.edges);
    const std::vector<skyroute::DroneSpec> fleet = skyroute::load_fleet(opt.drones);

    skyroute::StationLoadProfile baseline;
    baseline.schedule = {{0.0, opt.baseline_rate}};
    baseline.mean_occupancy_min = opt.baseline_occupancy;
    skyroute::LoadProfileTable profiles =
        opt.profiles.empty() ? skyroute::LoadProfileTable(baseline)
                             : skyroute::LoadProfileTable::load(opt.profiles, baseline);
    profiles.set_saturation_cap_min(opt.saturation_cap);

    const skyroute::DeliveryQuery query{opt.source, opt.dest, opt.start_min, opt.weight_kg};
    const skyroute::QualityDirectionConfig cfg = skyroute::QualityDirectionConfig::defaults();

    std::vector<skyroute::CompositionPlan> plans;
    if (opt.exhaustive) {
        plans.push_back(skyroute::exhaustive_composition(net, fleet, query, profiles, cfg,
                                                         opt.energy, opt.max_hops));
    } else {
        plans = skyroute::top_k_composition(net, fleet, query, opt.k, profiles, cfg,
                                            opt.energy);
    }

    std::cout << "drone: " << plans.front().drone.model << '\n';
    for (std::size_t i = 0; i < plans.size(); ++i)
        print_plan(plans[i], static_cast<int>(i) + 1);
    if (!opt.json_out.empty()) skyroute::write_plan_report(query, plans, opt.json_out);
    return 0;
}

int run_experiment_cmd(const std::string& config_file, const std::string& out_dir,
                       const std::vector<std::string>& overrides) {
    skyroute::ExperimentConfig config = skyroute::ExperimentConfig::from_file(config_file);
    for (const std::string& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw skyroute::ParseError("--set expects key=value, got '" + kv + "'");
        config.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (config.nodes_file.empty() || config.edges_file.empty() || config.drones_file.empty())
        throw skyroute::ConfigError("config must name nodes, edges and drones files");

    const skyroute::SkywayNetwork net =
        skyroute::load_network(config.nodes_file, config.edges_file);
    const std::vector<skyroute::DroneSpec> fleet = skyroute::load_fleet(config.drones_file);
    const std::vector<skyroute::MetricsRecord> records =
        skyroute::run_experiment(config, net, fleet);
    skyroute::emit_report(records, out_dir);
    std::cout << records.size() << " records -> " << out_dir << "/metrics.csv, "
              << out_dir << "/summary.csv\n";
    return 0;
}

int run_extract(const std::string& nodes, const std::string& edges, std::size_t n,
                std::uint64_t seed, const std::string& prefix) {
    const skyroute::SkywayNetwork net = skyroute::load_network(nodes, edges);
    const skyroute::SkywayNetwork sub = skyroute::extract_subnetwork(net, n, seed);
    skyroute::save_network(sub, prefix + "_nodes.csv", prefix + "_edges.csv");
    std::cout << sub.node_count() << " nodes, " << sub.segment_count() << " segments -> "
              << prefix << "_nodes.csv, " << prefix << "_edges.csv\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Drone delivery service composition over skyway networks"};
    app.require_subcommand(1);

    ComposeOptions copt;
    CLI::App* compose = app.add_subcommand("compose", "Compose one delivery query");
    compose->add_option("--nodes", copt.nodes, "nodes CSV")->required();
    compose->add_option("--edges", copt.edges, "edges CSV")->required();
    compose->add_option("--drones", copt.drones, "drones CSV")->required();
    compose->add_option("--profiles", copt.profiles, "station load profiles CSV");
    compose->add_option("--source", copt.source, "source node id")->required();
    compose->add_option("--dest", copt.dest, "destination node id")->required();
    compose->add_option("--weight", copt.weight_kg, "package weight, kg")->required();
    compose->add_option("--start-min", copt.start_min, "query start, minutes of day");
    compose->add_option("--k", copt.k, "number of candidate compositions");
    compose->add_flag("--exhaustive", copt.exhaustive,
                      "run the exhaustive baseline instead of top-k");
    compose->add_option("--json", copt.json_out, "write a JSON plan report here");
    compose->add_option("--max-hops", copt.max_hops,
                        "leg limit for --exhaustive (0 = node count)");
    compose->add_option("--baseline-rate", copt.baseline_rate,
                        "arrival rate per hour for unlisted stations");
    compose->add_option("--baseline-occupancy", copt.baseline_occupancy,
                        "mean pad occupancy minutes for unlisted stations");
    compose->add_option("--saturation-cap", copt.saturation_cap,
                        "wait cap in minutes for saturated stations");
    compose->add_option("--alpha", copt.energy.speed_payload_factor,
                        "speed loss fraction at full payload");
    compose->add_option("--beta", copt.energy.range_payload_factor,
                        "range loss fraction at full payload");
    compose->add_option("--reserve", copt.energy.reserve_fraction,
                        "battery reserve fraction");

    std::string config_file, out_dir;
    std::vector<std::string> overrides;
    CLI::App* experiment = app.add_subcommand("experiment", "Run the benchmark experiment");
    experiment->add_option("--config", config_file, "key=value config file")->required();
    experiment->add_option("--out", out_dir, "output directory")->required();
    experiment->add_option("--set", overrides, "override a config key (key=value)");

    std::string xnodes, xedges, xprefix;
    std::size_t xn = 0;
    std::uint64_t xseed = 0;
    CLI::App* extract = app.add_subcommand("extract", "Extract a connected subnetwork");
    extract->add_option("--nodes", xnodes, "nodes CSV")->required();
    extract->add_option("--edges", xedges, "edges CSV")->required();
    extract->add_option("--n", xn, "subnetwork node count")->required();
    extract->add_option("--seed", xseed, "extraction seed")->required();
    extract->add_option("--out-prefix", xprefix, "output file prefix")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }

    try {
        if (compose->parsed()) return run_compose(copt);
        if (experiment->parsed()) return run_experiment_cmd(config_file, out_dir, overrides);
        if (extract->parsed()) return run_extract(xnodes, xedges, xn, xseed, xprefix);
    } catch (const skyroute::NoCapableDroneError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const skyroute::UnreachableError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const skyroute::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const skyroute::ExtractionError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const skyroute::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return 0;
}
