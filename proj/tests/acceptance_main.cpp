// Acceptance suite: checks the engine end to end and prints one
// pass/fail line per criterion. Exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "skyroute/composition.hpp"
#include "skyroute/errors.hpp"
#include "skyroute/experiment.hpp"
#include "testutil.hpp"

using namespace skyroute;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// corpus: 100 seeded random connected graphs, 8-12 nodes, uneven station load
// ---------------------------------------------------------------------------

struct CorpusCase {
    SkywayNetwork net;
    LoadProfileTable profiles;
    DeliveryQuery query;
};

std::vector<CorpusCase> make_corpus(int count) {
    std::vector<CorpusCase> corpus;
    corpus.reserve(count);
    for (int i = 0; i < count; ++i) {
        const std::uint64_t seed = derive_seed(777, static_cast<std::uint64_t>(i));
        const int n = 8 + i % 5;
        SkywayNetwork net =
            testutil::random_connected_network(n, 0.35, 3000.0, 18000.0, seed);

        LoadProfileTable profiles = LoadProfileTable::zero();
        const double rates[] = {0.0, 2.0, 4.0, 6.0};
        for (const NodeRecord& node : net.nodes()) {
            const std::uint64_t h = derive_seed(seed, static_cast<std::uint64_t>(node.node_id));
            StationLoadProfile p;
            p.node_id = node.node_id;
            p.schedule = {{0.0, rates[h % 4]}};
            p.mean_occupancy_min = 10.0 + static_cast<double>(h % 16);
            p.seed = h;
            profiles.set(p);
        }

        std::mt19937_64 rng(derive_seed(seed, 0xdeaf));
        std::uniform_int_distribution<int> pick(0, n - 1);
        const int s = pick(rng);
        int t = pick(rng);
        while (t == s) t = pick(rng);

        corpus.push_back({std::move(net), std::move(profiles),
                          DeliveryQuery{s, t, static_cast<double>(rng() % 1440), 0.5}});
    }
    return corpus;
}

// ---------------------------------------------------------------------------

void criterion_1_and_2(const std::vector<CorpusCase>& corpus,
                       const std::vector<DroneSpec>& fleet,
                       const QualityDirectionConfig& cfg, const EnergyModelParams& params) {
    const auto t0 = std::chrono::steady_clock::now();
    int matches = 0;
    bool dominance = true;
    double gap_sum = 0.0;
    for (const CorpusCase& c : corpus) {
        const auto all = enumerate_feasible_plans(c.net, c.query, fleet.front(), params);
        const auto ranked = top_k_composition(c.net, fleet, c.query,
                                              static_cast<int>(all.size()), c.profiles, cfg,
                                              params);
        const auto exhaustive =
            exhaustive_composition(c.net, fleet, c.query, c.profiles, cfg, params);
        if (ranked.front().nodes == exhaustive.nodes) ++matches;

        const auto top3 = top_k_composition(c.net, fleet, c.query, 3, c.profiles, cfg, params);
        const double te = *exhaustive.extended_time_min;
        const double t3 = *top3.front().extended_time_min;
        if (te > t3) dominance = false;
        gap_sum += (t3 - te) / te;
    }
    const double elapsed = seconds_since(t0);
    const double mean_gap = gap_sum / static_cast<double>(corpus.size());

    report(1, "oracle equivalence at k = all feasible paths",
           matches == static_cast<int>(corpus.size()) && elapsed < 60.0,
           std::to_string(matches) + "/" + std::to_string(corpus.size()) + " winners match, " +
               fmt(elapsed) + " s");
    report(2, "exhaustive dominance and top-3 gap",
           dominance && mean_gap >= 0.0 && mean_gap <= 0.15,
           std::string("dominance ") + (dominance ? "holds" : "VIOLATED") + ", mean gap " +
               fmt(100.0 * mean_gap) + "%");
}

struct MethodStats {
    std::map<std::string, std::map<int, std::pair<double, int>>> sums; // method -> nodes -> (sum, n)
    void add(const MetricsRecord& r, double value) {
        auto& cell = sums[r.method][r.node_count];
        cell.first += value;
        cell.second += 1;
    }
    double mean(const std::string& method, int nodes) const {
        const auto& cell = sums.at(method).at(nodes);
        return cell.first / cell.second;
    }
};

std::vector<MetricsRecord> criterion_3_and_4(const SkywayNetwork& source_net,
                                             const std::vector<DroneSpec>& fleet,
                                             const ExperimentConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<MetricsRecord> records = run_experiment(config, source_net, fleet);
    const double elapsed = seconds_since(t0);

    MethodStats exec, dist;
    for (const MetricsRecord& r : records) {
        exec.add(r, r.execution_time_ms);
        dist.add(r, r.distance_km);
    }

    const double ratio_exh = exec.mean("exhaustive", 40) / exec.mean("exhaustive", 10);
    const double ratio_top5 = exec.mean("top-5", 40) / exec.mean("top-5", 10);
    double top40_min = 1e300;
    double top40_max = 0.0;
    for (const int k : config.k_values) {
        const double m = exec.mean("top-" + std::to_string(k), 40);
        top40_min = std::min(top40_min, m);
        top40_max = std::max(top40_max, m);
    }
    const bool scaling_ok = ratio_exh >= 10.0 * ratio_top5;
    const bool similar_ok = top40_max <= 2.0 * top40_min;
    report(3, "execution-time scaling trend",
           scaling_ok && similar_ok && elapsed < 300.0,
           "exhaustive 40/10 ratio " + fmt(ratio_exh) + " vs top-5 " + fmt(ratio_top5) +
               ", top-k spread at 40 nodes " + fmt(top40_max / top40_min) + "x, " +
               fmt(elapsed) + " s");

    bool distance_ok = true;
    std::string detail;
    const double exh_dist = dist.mean("exhaustive", 40);
    for (const int k : config.k_values) {
        const double topk = dist.mean("top-" + std::to_string(k), 40);
        if (topk > exh_dist * 1.05) distance_ok = false;
        detail += "top-" + std::to_string(k) + " " + fmt(topk) + " km ";
    }
    report(4, "distance trend at 40 nodes", distance_ok,
           detail + "vs exhaustive " + fmt(exh_dist) + " km");
    return records;
}

void criterion_5(const std::vector<CorpusCase>& corpus, const std::vector<DroneSpec>& fleet,
                 const QualityDirectionConfig& cfg, const EnergyModelParams& params) {
    const LoadProfileTable zero = LoadProfileTable::zero();
    bool exact = true;
    bool ranking_equal = true;
    int queries = 0;
    for (std::size_t i = 0; i < corpus.size() && queries < 50; ++i, ++queries) {
        const CorpusCase& c = corpus[i];
        const DroneSpec drone = block_nested_loop(fleet, c.query.weight_kg, cfg);
        const auto phase1 = base_comps(c.net, c.query, 4, drone, params);
        const auto phase2 = top_k_composition(c.net, fleet, c.query, 4, zero, cfg, params);
        if (phase1.size() != phase2.size()) {
            ranking_equal = false;
            continue;
        }
        for (std::size_t p = 0; p < phase1.size(); ++p) {
            if (phase2[p].nodes != phase1[p].nodes) ranking_equal = false;
            if (*phase2[p].extended_time_min != phase2[p].base_time_min) exact = false;
        }
    }
    report(5, "zero-congestion reduction T_n == S_n", exact && ranking_equal,
           std::to_string(queries) + " queries, bit-exact " + (exact ? "yes" : "NO") +
               ", ranking preserved " + (ranking_equal ? "yes" : "NO"));
}

void criterion_6() {
    const double rates[] = {2.0, 4.0, 6.0};
    const double occupancies[] = {10.0, 20.0, 30.0};
    const int pad_counts[] = {4, 5, 6};

    double worst = 0.0;
    bool agree = true;
    bool monotone = true;
    double analytic[3][3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int p = 0; p < 3; ++p) {
                StationLoadProfile profile;
                profile.node_id = 0;
                profile.schedule = {{0.0, rates[i]}};
                profile.mean_occupancy_min = occupancies[j];
                profile.seed = derive_seed(606, i * 9 + j * 3 + p);
                const double pr =
                    probability_wait_recharge(profile, pad_counts[p], 0.0, 0.0).pr;
                analytic[i][j][p] = pr;
                const auto sim = simulate_station(profile, pad_counts[p], 1e12, 100000);
                const double err = std::abs(sim.pr - pr);
                worst = std::max(worst, err);
                if (err > 0.02) agree = false;
            }
    for (int j = 0; j < 3; ++j)
        for (int p = 0; p < 3; ++p)
            for (int i = 1; i < 3; ++i)
                if (analytic[i][j][p] < analytic[i - 1][j][p]) monotone = false;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int p = 1; p < 3; ++p)
                if (analytic[i][j][p] > analytic[i][j][p - 1]) monotone = false;

    report(6, "Erlang-C matches the event simulator on the 27-point grid",
           agree && monotone,
           "max |analytic - simulated| = " + fmt(worst) + ", monotone " +
               (monotone ? "yes" : "NO"));
}

void criterion_7(const QualityDirectionConfig& cfg) {
    int matches = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::vector<DroneSpec> fleet = testutil::random_fleet(200, derive_seed(51, seed));
        const double w = 0.8 + 0.02 * static_cast<double>(seed);

        const std::vector<DroneSpec> candidates = filter_by_payload(fleet, w);
        const DroneSpec* best = nullptr;
        for (const DroneSpec& a : candidates) {
            bool dominated = false;
            for (const DroneSpec& b : candidates) {
                const auto [better, worse] = count_diff(a, b, cfg);
                if (worse > 0 && better == 0) {
                    dominated = true;
                    break;
                }
            }
            if (dominated) continue;
            if (!best || quality_field(a, cfg.to_sel) > quality_field(*best, cfg.to_sel) ||
                (quality_field(a, cfg.to_sel) == quality_field(*best, cfg.to_sel) &&
                 a.model < best->model))
                best = &a;
        }
        if (best && block_nested_loop(fleet, w, cfg).model == best->model) ++matches;
    }

    const DroneSpec table1{"DJI M200 V2", 1.45, 24.0, 32.4, 81.0, 134.4, 349.2};
    bool rejected = filter_by_payload({table1}, 1.46).empty() &&
                    filter_by_payload({table1}, 2.0).empty();
    try {
        block_nested_loop({table1}, 1.5, cfg);
        rejected = false;
    } catch (const NoCapableDroneError&) {
    }

    report(7, "skyline selection matches brute force", matches == 50 && rejected,
           std::to_string(matches) + "/50 fleets match, overweight rejection " +
               (rejected ? "yes" : "NO"));
}

void criterion_8(const std::filesystem::path& data_dir) {
    const SkywayNetwork net =
        load_network(data_dir / "fig2" / "nodes.csv", data_dir / "fig2" / "edges.csv");
    const std::vector<DroneSpec> fleet = load_fleet(data_dir / "fig2" / "drones.csv");
    const auto plans = base_comps(net, {1, 12, 0.0, 0.0}, 3, fleet.front(), {});
    const bool sequence_ok =
        plans.front().nodes == std::vector<NodeId>{1, 2, 5, 9, 12};
    const bool exact = plans.front().base_time_min == 95.0;
    report(8, "12-node fixture ranks the 95-minute composition first",
           sequence_ok && exact,
           "rank-1 S_n = " + fmt(plans.front().base_time_min) + " min over " +
               std::to_string(plans.front().legs.size()) + " legs");
}

void criterion_9(const SkywayNetwork& source_net, const std::vector<DroneSpec>& fleet,
                 const ExperimentConfig& config,
                 const std::vector<MetricsRecord>& first_run) {
    const auto dir_a = testutil::temp_dir("accept_a");
    const auto dir_b = testutil::temp_dir("accept_b");
    emit_report(first_run, dir_a);
    emit_report(run_experiment(config, source_net, fleet), dir_b);

    // identical lines once the execution_time_ms column is blanked
    std::ifstream a(dir_a / "metrics.csv");
    std::ifstream b(dir_b / "metrics.csv");
    std::string la, lb;
    bool identical = true;
    std::size_t lines = 0;
    while (true) {
        const bool more_a = static_cast<bool>(std::getline(a, la));
        const bool more_b = static_cast<bool>(std::getline(b, lb));
        if (more_a != more_b) identical = false;
        if (!more_a || !more_b) break;
        ++lines;
        std::vector<std::string> fa, fb;
        std::stringstream sa(la), sb(lb);
        std::string field;
        while (std::getline(sa, field, ',')) fa.push_back(field);
        while (std::getline(sb, field, ',')) fb.push_back(field);
        if (fa.size() != fb.size()) {
            identical = false;
            continue;
        }
        for (std::size_t i = 0; i < fa.size(); ++i)
            if (i != 3 && fa[i] != fb[i]) identical = false; // column 3: execution_time_ms
    }
    report(9, "experiment determinism across runs", identical && lines > 1,
           std::to_string(lines) + " csv lines compared");
}

} // namespace

int main() {
    const std::filesystem::path data_dir = SKYROUTE_DATA_DIR;
    const QualityDirectionConfig cfg = QualityDirectionConfig::defaults();
    const EnergyModelParams params;
    const std::vector<DroneSpec> corpus_fleet{testutil::test_drone()};

    std::printf("== acceptance suite ==\n");
    try {
        const std::vector<CorpusCase> corpus = make_corpus(100);
        criterion_1_and_2(corpus, corpus_fleet, cfg, params);

        const SkywayNetwork source_net =
            testutil::grid_ball_network(16, 16, 0.65, 2000.0, 10000.0, 999);
        const std::vector<DroneSpec> fleet =
            load_fleet(data_dir / "sample" / "drones.csv");
        ExperimentConfig config;
        config.master_seed = 42;
        config.package_weight_kg = 1.0;
        const std::vector<MetricsRecord> records =
            criterion_3_and_4(source_net, fleet, config);

        criterion_5(corpus, corpus_fleet, cfg, params);
        criterion_6();
        criterion_7(cfg);
        criterion_8(data_dir);
        criterion_9(source_net, fleet, config, records);
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance suite aborted: %s\n", e.what());
        return 1;
    }

    std::printf("== %s ==\n", g_failures == 0 ? "all criteria passed" : "FAILURES PRESENT");
    return g_failures;
}
