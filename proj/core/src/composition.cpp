#include "skyroute/composition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "skyroute/errors.hpp"

namespace skyroute {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense-indexed view of the network for one (drone, payload) pair:
// per-segment service times and energy feasibility.
struct QueryGraph {
    const SkywayNetwork* net = nullptr;
    std::unordered_map<NodeId, int> index;
    std::vector<NodeId> ids;
    std::vector<double> edge_time;   // per segment index, minutes
    std::vector<double> edge_energy; // per segment index, battery fraction
    std::vector<char> edge_ok;       // energy <= 1 - reserve
    // adjacency per dense node: (dense neighbor, segment index), ascending id
    std::vector<std::vector<std::pair<int, std::size_t>>> adj;
};

QueryGraph build_query_graph(const SkywayNetwork& net, const DroneSpec& drone,
                             double payload_kg, const EnergyModelParams& params) {
    QueryGraph g;
    g.net = &net;
    const auto& nodes = net.nodes();
    g.ids.reserve(nodes.size());
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        g.index[nodes[i].node_id] = i;
        g.ids.push_back(nodes[i].node_id);
    }
    const auto& segments = net.segments();
    g.edge_time.resize(segments.size());
    g.edge_energy.resize(segments.size());
    g.edge_ok.resize(segments.size());
    const double feasible_limit = 1.0 - params.reserve_fraction;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        g.edge_time[s] = service_time_min(segments[s], drone, payload_kg, params);
        g.edge_energy[s] = energy_consumption(segments[s], drone, payload_kg, params);
        g.edge_ok[s] = g.edge_energy[s] <= feasible_limit ? 1 : 0;
    }
    g.adj.resize(nodes.size());
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
        for (const Neighbor& nb : net.neighbors(nodes[i].node_id))
            g.adj[i].emplace_back(g.index.at(nb.node), nb.segment_index);
    return g;
}

struct DensePath {
    std::vector<int> nodes;
    double cost = 0.0;
    bool operator==(const DensePath& other) const { return nodes == other.nodes; }
};

// Ordering used everywhere a "best" path is chosen: cost, then fewer
// legs, then lexicographic node sequence.
struct PathLess {
    bool operator()(const DensePath& a, const DensePath& b) const {
        if (a.cost != b.cost) return a.cost < b.cost;
        if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
        return a.nodes < b.nodes;
    }
};

double path_cost(const QueryGraph& g, const std::vector<int>& nodes) {
    double cost = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        for (const auto& [v, seg] : g.adj[nodes[i]])
            if (v == nodes[i + 1]) {
                cost += g.edge_time[seg];
                break;
            }
    }
    return cost;
}

// Shortest src->dst path under bans, minimal by (cost, hops, lexicographic
// sequence). Dijkstra from dst, then a min-hops DP over the shortest-path
// DAG, then a greedy smallest-id walk from src.
std::optional<DensePath> shortest_path(const QueryGraph& g, int src, int dst,
                                       const std::vector<char>& banned_node,
                                       const std::set<std::size_t>& banned_edges) {
    const int n = static_cast<int>(g.ids.size());
    if (banned_node[src] || banned_node[dst]) return std::nullopt;

    std::vector<double> dist(n, kInf);
    dist[dst] = 0.0;
    using HeapItem = std::pair<double, int>;
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    heap.emplace(0.0, dst);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const auto& [v, seg] : g.adj[u]) {
            if (!g.edge_ok[seg] || banned_node[v] || banned_edges.contains(seg)) continue;
            const double nd = d + g.edge_time[seg];
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.emplace(nd, v);
            }
        }
    }
    if (dist[src] == kInf) return std::nullopt;

    // min hops to dst restricted to cost-optimal continuations
    std::vector<int> order;
    for (int i = 0; i < n; ++i)
        if (dist[i] < kInf) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] < dist[b]; });
    std::vector<int> hops(n, std::numeric_limits<int>::max());
    hops[dst] = 0;
    for (const int v : order) {
        if (v == dst) continue;
        for (const auto& [u, seg] : g.adj[v]) {
            if (!g.edge_ok[seg] || banned_node[u] || banned_edges.contains(seg)) continue;
            if (dist[u] == kInf || hops[u] == std::numeric_limits<int>::max()) continue;
            if (dist[v] == g.edge_time[seg] + dist[u])
                hops[v] = std::min(hops[v], hops[u] + 1);
        }
    }

    DensePath path;
    path.cost = dist[src];
    path.nodes.push_back(src);
    int u = src;
    while (u != dst) {
        int next = -1;
        for (const auto& [v, seg] : g.adj[u]) { // ascending neighbor id
            if (!g.edge_ok[seg] || banned_node[v] || banned_edges.contains(seg)) continue;
            if (dist[v] == kInf || hops[v] == std::numeric_limits<int>::max()) continue;
            if (dist[u] == g.edge_time[seg] + dist[v] && hops[v] == hops[u] - 1) {
                next = v;
                break;
            }
        }
        if (next < 0) return std::nullopt; // unreachable by construction
        path.nodes.push_back(next);
        u = next;
    }
    return path;
}

// Yen's k shortest loopless paths. src != dst.
std::vector<DensePath> yen_k_shortest(const QueryGraph& g, int src, int dst, int k) {
    std::vector<DensePath> accepted;
    std::vector<char> no_ban(g.ids.size(), 0);
    auto first = shortest_path(g, src, dst, no_ban, {});
    if (!first) return accepted;
    accepted.push_back(std::move(*first));

    std::set<DensePath, PathLess> candidates;
    while (static_cast<int>(accepted.size()) < k) {
        const DensePath prev = accepted.back();
        for (std::size_t i = 0; i + 1 < prev.nodes.size(); ++i) {
            const int spur = prev.nodes[i];
            const std::vector<int> root(prev.nodes.begin(),
                                        prev.nodes.begin() + static_cast<std::ptrdiff_t>(i) + 1);

            std::set<std::size_t> banned_edges;
            for (const DensePath& p : accepted) {
                if (p.nodes.size() <= i + 1) continue;
                if (!std::equal(root.begin(), root.end(), p.nodes.begin())) continue;
                // ban the edge this accepted path takes out of the spur node
                for (const auto& [v, seg] : g.adj[spur])
                    if (v == p.nodes[i + 1]) {
                        banned_edges.insert(seg);
                        break;
                    }
            }
            std::vector<char> banned_node(g.ids.size(), 0);
            for (std::size_t j = 0; j < i; ++j) banned_node[root[j]] = 1;

            auto spur_path = shortest_path(g, spur, dst, banned_node, banned_edges);
            if (!spur_path) continue;

            DensePath candidate;
            candidate.nodes = root;
            candidate.nodes.insert(candidate.nodes.end(), spur_path->nodes.begin() + 1,
                                   spur_path->nodes.end());
            // canonical left-to-right cost so identical sequences dedupe exactly
            candidate.cost = path_cost(g, candidate.nodes);
            if (std::find(accepted.begin(), accepted.end(), candidate) == accepted.end())
                candidates.insert(std::move(candidate));
        }
        if (candidates.empty()) break;
        accepted.push_back(*candidates.begin());
        candidates.erase(candidates.begin());
    }
    return accepted;
}

CompositionPlan make_plan(const QueryGraph& g, const std::vector<int>& dense_nodes,
                          const DroneSpec& drone) {
    CompositionPlan plan;
    plan.drone = drone;
    plan.nodes.reserve(dense_nodes.size());
    for (const int d : dense_nodes) plan.nodes.push_back(g.ids[d]);
    double total_s = 0.0;
    double total_m = 0.0;
    for (std::size_t i = 0; i + 1 < dense_nodes.size(); ++i) {
        std::size_t seg_index = 0;
        bool found = false;
        for (const auto& [v, seg] : g.adj[dense_nodes[i]])
            if (v == dense_nodes[i + 1]) {
                seg_index = seg;
                found = true;
                break;
            }
        if (!found)
            throw IntegrityError("plan references a segment missing from the network");
        const Segment& seg = g.net->segment(seg_index);
        PlanLeg leg;
        leg.segment_id = seg.segment_id;
        leg.from = plan.nodes[i];
        leg.to = plan.nodes[i + 1];
        leg.length_m = seg.length_m;
        leg.service_time_min = g.edge_time[seg_index];
        leg.energy_fraction = g.edge_energy[seg_index];
        total_s += leg.service_time_min;
        total_m += leg.length_m;
        plan.legs.push_back(leg);
    }
    plan.base_time_min = total_s;
    plan.distance_km = total_m / 1000.0;
    return plan;
}

CompositionPlan degenerate_plan(const DeliveryQuery& query, const DroneSpec& drone) {
    CompositionPlan plan;
    plan.nodes = {query.source};
    plan.drone = drone;
    return plan;
}

struct PlanRankLess {
    bool operator()(const CompositionPlan& a, double ta, const CompositionPlan& b,
                    double tb) const {
        if (ta != tb) return ta < tb;
        if (a.leg_count() != b.leg_count()) return a.leg_count() < b.leg_count();
        return a.nodes < b.nodes;
    }
};

} // namespace

std::vector<CompositionPlan> base_comps(const SkywayNetwork& net, const DeliveryQuery& query,
                                        int k, const DroneSpec& drone,
                                        const EnergyModelParams& params) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    net.node(query.source); // LookupError on unknown endpoints
    net.node(query.dest);
    if (query.source == query.dest) return {degenerate_plan(query, drone)};

    const QueryGraph g = build_query_graph(net, drone, query.weight_kg, params);
    const std::vector<DensePath> paths =
        yen_k_shortest(g, g.index.at(query.source), g.index.at(query.dest), k);
    if (paths.empty())
        throw UnreachableError("no feasible path from " + std::to_string(query.source) +
                               " to " + std::to_string(query.dest));

    std::vector<CompositionPlan> plans;
    plans.reserve(paths.size());
    for (const DensePath& p : paths) plans.push_back(make_plan(g, p.nodes, drone));

    std::vector<double> times;
    times.reserve(plans.size());
    for (const CompositionPlan& p : plans) times.push_back(p.base_time_min);
    return rank_comps(std::move(plans), times);
}

std::vector<CompositionPlan> rank_comps(std::vector<CompositionPlan> plans,
                                        const std::vector<double>& times) {
    if (plans.size() != times.size())
        throw std::invalid_argument("rank_comps: plans and times differ in length");
    std::vector<std::size_t> order(plans.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return PlanRankLess{}(plans[a], times[a], plans[b], times[b]);
    });
    std::vector<CompositionPlan> out;
    out.reserve(plans.size());
    for (const std::size_t i : order) out.push_back(std::move(plans[i]));
    return out;
}

CompositionPlan extend_with_congestion(const SkywayNetwork& net, CompositionPlan plan,
                                       const DeliveryQuery& query,
                                       const LoadProfileTable& profiles,
                                       const EnergyModelParams& params) {
    const double feasible_limit = 1.0 - params.reserve_fraction;
    plan.station_estimates.clear();
    plan.total_recharge_min = 0.0;
    plan.total_wait_min = 0.0;

    double elapsed = 0.0;
    DroneState state{1.0, query.weight_kg};
    for (std::size_t j = 0; j < plan.legs.size(); ++j) {
        const PlanLeg& leg = plan.legs[j];
        if (leg.energy_fraction > feasible_limit)
            throw InfeasibleError("leg " + std::to_string(leg.from) + "->" +
                                  std::to_string(leg.to) + " needs more battery than " +
                                  "the reserve allows");
        state.battery_fraction -= leg.energy_fraction;
        elapsed += leg.service_time_min;

        if (j + 1 == plan.legs.size()) break; // destination: no wait/recharge term

        const NodeId station = leg.to;
        const double next_energy = plan.legs[j + 1].energy_fraction;
        const RechargeResult recharge = partial_recharge_time(plan.drone, state,
                                                              next_energy, params);
        const double arrival = std::fmod(query.start_min + elapsed, kMinutesPerDay);
        const CongestionEstimate est = probability_wait_recharge(
            profiles.for_node(station), net.node(station).pad_count, arrival,
            recharge.duration_min, profiles.saturation_cap_min());
        elapsed += est.pr * (est.recharge_min + est.wait_min);
        state.battery_fraction = recharge.battery_fraction; // full physical charge
        plan.total_recharge_min += est.recharge_min;
        plan.total_wait_min += est.wait_min;
        plan.station_estimates.push_back(est);
    }
    plan.extended_time_min = elapsed;
    plan.final_battery_fraction = state.battery_fraction;
    return plan;
}

std::vector<CompositionPlan> top_k_composition(const SkywayNetwork& net,
                                               const std::vector<DroneSpec>& fleet,
                                               const DeliveryQuery& query, int k,
                                               const LoadProfileTable& profiles,
                                               const QualityDirectionConfig& cfg,
                                               const EnergyModelParams& params) {
    const DroneSpec drone = block_nested_loop(fleet, query.weight_kg, cfg);

    // Phase 1: top-k compositions by service time
    std::vector<CompositionPlan> plans = base_comps(net, query, k, drone, params);
    std::vector<double> base_times;
    base_times.reserve(plans.size());
    for (const CompositionPlan& p : plans) base_times.push_back(p.base_time_min);
    plans = rank_comps(std::move(plans), base_times);

    // Phase 2: extend with congestion, re-rank by stochastic delivery time
    std::vector<double> extended_times;
    extended_times.reserve(plans.size());
    for (CompositionPlan& p : plans) {
        p = extend_with_congestion(net, std::move(p), query, profiles, params);
        extended_times.push_back(*p.extended_time_min);
    }
    return rank_comps(std::move(plans), extended_times);
}

std::vector<CompositionPlan> enumerate_feasible_plans(const SkywayNetwork& net,
                                                      const DeliveryQuery& query,
                                                      const DroneSpec& drone,
                                                      const EnergyModelParams& params,
                                                      std::size_t max_hops) {
    net.node(query.source);
    net.node(query.dest);
    if (query.source == query.dest) return {degenerate_plan(query, drone)};
    if (max_hops == 0) max_hops = net.node_count();

    const QueryGraph g = build_query_graph(net, drone, query.weight_kg, params);
    const int src = g.index.at(query.source);
    const int dst = g.index.at(query.dest);

    std::vector<CompositionPlan> plans;
    std::vector<int> stack{src};
    std::vector<char> on_path(g.ids.size(), 0);
    on_path[src] = 1;

    // iterative DFS over simple paths, neighbors in ascending id order
    std::vector<std::size_t> next_index{0};
    while (!stack.empty()) {
        const int u = stack.back();
        if (u == dst) {
            plans.push_back(make_plan(g, stack, drone));
            on_path[u] = 0;
            stack.pop_back();
            next_index.pop_back();
            continue;
        }
        bool descended = false;
        if (stack.size() <= max_hops) { // one more leg allowed
            std::size_t& idx = next_index.back();
            while (idx < g.adj[u].size()) {
                const auto [v, seg] = g.adj[u][idx];
                ++idx;
                if (!g.edge_ok[seg] || on_path[v]) continue;
                stack.push_back(v);
                on_path[v] = 1;
                next_index.push_back(0);
                descended = true;
                break;
            }
        }
        if (!descended) {
            on_path[u] = 0;
            stack.pop_back();
            next_index.pop_back();
        }
    }
    return plans;
}

CompositionPlan exhaustive_composition(const SkywayNetwork& net,
                                       const std::vector<DroneSpec>& fleet,
                                       const DeliveryQuery& query,
                                       const LoadProfileTable& profiles,
                                       const QualityDirectionConfig& cfg,
                                       const EnergyModelParams& params,
                                       std::size_t max_hops) {
    const DroneSpec drone = block_nested_loop(fleet, query.weight_kg, cfg);
    std::vector<CompositionPlan> plans =
        enumerate_feasible_plans(net, query, drone, params, max_hops);
    if (plans.empty())
        throw UnreachableError("no feasible path from " + std::to_string(query.source) +
                               " to " + std::to_string(query.dest));

    std::optional<CompositionPlan> best;
    for (CompositionPlan& p : plans) {
        CompositionPlan extended = extend_with_congestion(net, std::move(p), query,
                                                          profiles, params);
        if (!best || PlanRankLess{}(extended, *extended.extended_time_min, *best,
                                    *best->extended_time_min))
            best = std::move(extended);
    }
    return *best;
}

} // namespace skyroute
