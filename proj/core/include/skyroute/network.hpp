#ifndef SKYROUTE_NETWORK_HPP
#define SKYROUTE_NETWORK_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <unordered_map>
#include <vector>

namespace skyroute {

using NodeId = std::int64_t;
using SegmentId = std::int64_t;

/// A recharging station / delivery target. Coordinates are planar metres.
struct NodeRecord {
    NodeId node_id = 0;
    double x = 0.0;
    double y = 0.0;
    int pad_count = 3;
};

/// A flyable skyway segment between two stations.
struct Segment {
    SegmentId segment_id = 0;
    NodeId endpoint_a = 0;
    NodeId endpoint_b = 0;
    double length_m = 0.0;

    NodeId other(NodeId n) const { return n == endpoint_a ? endpoint_b : endpoint_a; }
};

/// Incident segment as seen from one node.
struct Neighbor {
    NodeId node = 0;              ///< adjacent node id
    std::size_t segment_index = 0; ///< index into SkywayNetwork::segments()
};

/// Undirected skyway graph. Immutable after construction; construction
/// validates all structural invariants (unique ids, no self-loops, no
/// parallel segments, endpoints present, positive lengths, pads >= 1).
class SkywayNetwork {
public:
    SkywayNetwork() = default;
    SkywayNetwork(std::vector<NodeRecord> nodes, std::vector<Segment> segments);

    const std::vector<NodeRecord>& nodes() const { return nodes_; }
    const std::vector<Segment>& segments() const { return segments_; }

    bool has_node(NodeId id) const { return node_index_.contains(id); }
    const NodeRecord& node(NodeId id) const;       ///< throws LookupError
    const Segment& segment(std::size_t index) const { return segments_.at(index); }

    /// Incident segments of a node, ordered by ascending neighbor id.
    std::span<const Neighbor> neighbors(NodeId id) const; ///< throws LookupError

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t segment_count() const { return segments_.size(); }

private:
    std::vector<NodeRecord> nodes_;                 // sorted by node_id
    std::vector<Segment> segments_;
    std::unordered_map<NodeId, std::size_t> node_index_;
    std::vector<std::vector<Neighbor>> adjacency_;  // parallel to nodes_
};

/// Loads a network from the two CSV files (`node_id,x,y,pads` and
/// `u,v,length_m`). The pads column may be absent; it defaults to 3.
SkywayNetwork load_network(const std::filesystem::path& nodes_file,
                           const std::filesystem::path& edges_file);

/// Writes the same format load_network reads. load(save(net)) == net.
void save_network(const SkywayNetwork& net,
                  const std::filesystem::path& nodes_file,
                  const std::filesystem::path& edges_file);

/// Connected induced subgraph with exactly n nodes, grown breadth-first
/// from a seeded random start node. Deterministic given (net, n, seed).
/// Throws ExtractionError when no connected component has >= n nodes.
SkywayNetwork extract_subnetwork(const SkywayNetwork& net, std::size_t n,
                                 std::uint64_t seed);

} // namespace skyroute

#endif
