#include "skyroute/network.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <random>
#include <set>
#include <utility>

#include "skyroute/csv.hpp"
#include "skyroute/errors.hpp"

namespace skyroute {

SkywayNetwork::SkywayNetwork(std::vector<NodeRecord> nodes, std::vector<Segment> segments)
    : nodes_(std::move(nodes)), segments_(std::move(segments)) {
    std::sort(nodes_.begin(), nodes_.end(),
              [](const NodeRecord& a, const NodeRecord& b) { return a.node_id < b.node_id; });

    node_index_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const NodeRecord& n = nodes_[i];
        if (!node_index_.emplace(n.node_id, i).second)
            throw IntegrityError("duplicate node_id " + std::to_string(n.node_id));
        if (n.pad_count < 1)
            throw IntegrityError("node " + std::to_string(n.node_id) + ": pad_count must be >= 1");
    }

    adjacency_.assign(nodes_.size(), {});
    std::set<std::pair<NodeId, NodeId>> seen_pairs;
    for (std::size_t s = 0; s < segments_.size(); ++s) {
        const Segment& seg = segments_[s];
        if (seg.endpoint_a == seg.endpoint_b)
            throw IntegrityError("segment " + std::to_string(seg.segment_id) + ": self-loop");
        if (!(seg.length_m > 0.0))
            throw IntegrityError("segment " + std::to_string(seg.segment_id) +
                                 ": length must be positive");
        const auto a = node_index_.find(seg.endpoint_a);
        const auto b = node_index_.find(seg.endpoint_b);
        if (a == node_index_.end() || b == node_index_.end())
            throw IntegrityError("segment " + std::to_string(seg.segment_id) +
                                 ": endpoint references unknown node " +
                                 std::to_string(a == node_index_.end() ? seg.endpoint_a
                                                                       : seg.endpoint_b));
        const auto pair = std::minmax(seg.endpoint_a, seg.endpoint_b);
        if (!seen_pairs.emplace(pair.first, pair.second).second)
            throw IntegrityError("duplicate segment between nodes " +
                                 std::to_string(pair.first) + " and " +
                                 std::to_string(pair.second));
        adjacency_[a->second].push_back({seg.endpoint_b, s});
        adjacency_[b->second].push_back({seg.endpoint_a, s});
    }
    for (auto& adj : adjacency_)
        std::sort(adj.begin(), adj.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
}

const NodeRecord& SkywayNetwork::node(NodeId id) const {
    const auto it = node_index_.find(id);
    if (it == node_index_.end())
        throw LookupError("unknown node " + std::to_string(id));
    return nodes_[it->second];
}

std::span<const Neighbor> SkywayNetwork::neighbors(NodeId id) const {
    const auto it = node_index_.find(id);
    if (it == node_index_.end())
        throw LookupError("unknown node " + std::to_string(id));
    return adjacency_[it->second];
}

SkywayNetwork load_network(const std::filesystem::path& nodes_file,
                           const std::filesystem::path& edges_file) {
    const csv::Table node_table = csv::read_file(nodes_file);
    const int col_id = node_table.column("node_id");
    const int col_x = node_table.column("x");
    const int col_y = node_table.column("y");
    const int col_pads = node_table.column("pads"); // optional, defaults to 3
    if (col_id < 0 || col_x < 0 || col_y < 0)
        throw ParseError(nodes_file.string() + ": header must contain node_id,x,y[,pads]");

    std::vector<NodeRecord> nodes;
    nodes.reserve(node_table.rows.size());
    for (const auto& row : node_table.rows) {
        NodeRecord n;
        n.node_id = csv::to_int(node_table, row, col_id);
        n.x = csv::to_double(node_table, row, col_x);
        n.y = csv::to_double(node_table, row, col_y);
        if (col_pads >= 0) {
            const std::int64_t pads = csv::to_int(node_table, row, col_pads);
            if (pads < 1)
                throw IntegrityError(nodes_file.string() + ":" + std::to_string(row.line) +
                                     ": pads must be >= 1");
            n.pad_count = static_cast<int>(pads);
        }
        nodes.push_back(n);
    }

    const csv::Table edge_table = csv::read_file(edges_file);
    const int col_u = edge_table.column("u");
    const int col_v = edge_table.column("v");
    const int col_len = edge_table.column("length_m");
    if (col_u < 0 || col_v < 0 || col_len < 0)
        throw ParseError(edges_file.string() + ": header must contain u,v,length_m");

    std::vector<Segment> segments;
    segments.reserve(edge_table.rows.size());
    for (const auto& row : edge_table.rows) {
        Segment s;
        s.segment_id = static_cast<SegmentId>(segments.size());
        s.endpoint_a = csv::to_int(edge_table, row, col_u);
        s.endpoint_b = csv::to_int(edge_table, row, col_v);
        s.length_m = csv::to_double(edge_table, row, col_len);
        if (!(s.length_m > 0.0))
            throw IntegrityError(edges_file.string() + ":" + std::to_string(row.line) +
                                 ": length_m must be positive");
        segments.push_back(s);
    }

    return SkywayNetwork(std::move(nodes), std::move(segments));
}

void save_network(const SkywayNetwork& net,
                  const std::filesystem::path& nodes_file,
                  const std::filesystem::path& edges_file) {
    std::ofstream nf(nodes_file);
    if (!nf) throw IoError("cannot write " + nodes_file.string());
    nf << "node_id,x,y,pads\n";
    for (const NodeRecord& n : net.nodes())
        nf << n.node_id << ',' << csv::format_double(n.x) << ',' << csv::format_double(n.y)
           << ',' << n.pad_count << '\n';
    if (!nf.flush()) throw IoError("failed writing " + nodes_file.string());

    std::ofstream ef(edges_file);
    if (!ef) throw IoError("cannot write " + edges_file.string());
    ef << "u,v,length_m\n";
    for (const Segment& s : net.segments())
        ef << s.endpoint_a << ',' << s.endpoint_b << ',' << csv::format_double(s.length_m)
           << '\n';
    if (!ef.flush()) throw IoError("failed writing " + edges_file.string());
}

namespace {

// Component label per node index; returns component sizes.
std::vector<std::size_t> label_components(const SkywayNetwork& net, std::vector<int>& label) {
    const auto& nodes = net.nodes();
    label.assign(nodes.size(), -1);
    std::vector<std::size_t> sizes;
    std::unordered_map<NodeId, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i].node_id] = i;

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (label[i] >= 0) continue;
        const int comp = static_cast<int>(sizes.size());
        std::size_t size = 0;
        std::deque<std::size_t> queue{i};
        label[i] = comp;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            ++size;
            for (const Neighbor& nb : net.neighbors(nodes[u].node_id)) {
                const std::size_t v = index.at(nb.node);
                if (label[v] < 0) {
                    label[v] = comp;
                    queue.push_back(v);
                }
            }
        }
        sizes.push_back(size);
    }
    return sizes;
}

} // namespace

SkywayNetwork extract_subnetwork(const SkywayNetwork& net, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw ExtractionError("subnetwork size must be positive");
    if (n > net.node_count())
        throw ExtractionError("requested " + std::to_string(n) + " nodes from a network of " +
                              std::to_string(net.node_count()));

    std::vector<int> label;
    const std::vector<std::size_t> sizes = label_components(net, label);

    // Start nodes are restricted to components large enough to satisfy n.
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < net.node_count(); ++i)
        if (sizes[label[i]] >= n) eligible.push_back(i);
    if (eligible.empty())
        throw ExtractionError("no connected component has " + std::to_string(n) + " nodes");

    std::mt19937_64 rng(seed);
    const std::size_t start =
        eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng)];

    // BFS ball growth, neighbors in ascending id order.
    const auto& nodes = net.nodes();
    std::set<NodeId> chosen;
    std::deque<NodeId> queue{nodes[start].node_id};
    chosen.insert(nodes[start].node_id);
    while (!queue.empty() && chosen.size() < n) {
        const NodeId u = queue.front();
        queue.pop_front();
        for (const Neighbor& nb : net.neighbors(u)) {
            if (chosen.size() >= n) break;
            if (chosen.insert(nb.node).second) queue.push_back(nb.node);
        }
    }

    std::vector<NodeRecord> sub_nodes;
    sub_nodes.reserve(n);
    for (const NodeRecord& rec : nodes)
        if (chosen.contains(rec.node_id)) sub_nodes.push_back(rec);

    // Induced: every segment with both endpoints inside survives.
    std::vector<Segment> sub_segments;
    for (const Segment& s : net.segments())
        if (chosen.contains(s.endpoint_a) && chosen.contains(s.endpoint_b))
            sub_segments.push_back(s);

    return SkywayNetwork(std::move(sub_nodes), std::move(sub_segments));
}

} // namespace skyroute
