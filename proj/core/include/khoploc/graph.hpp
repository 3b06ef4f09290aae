#pragma once

#include <cstdint>
#include <vector>

#include "khoploc/connectivity.hpp"

namespace khoploc {

/// Hop count marker for nodes more than K hops away or disconnected.
inline constexpr int kUnreachable = -1;

/// Per-anchor minimum hop counts, truncated at max_hop. hops[a][v] is the
/// minimum hop count from anchors[a] to node v, kUnreachable if above the
/// bound, and 0 for the anchor itself.
struct HopTable {
    std::vector<int> anchors;
    int max_hop = 0;
    std::vector<std::vector<int>> hops;
    /// Count of (node, neighbor) relaxations performed across all floods; the
    /// simulated beacon-message total for the hop-count phase.
    std::uint64_t messages = 0;
};

/// Breadth-first minimum hop counts from one source, truncated at max_hop.
/// If message_count is given, it is incremented by one per neighbor scan.
std::vector<int> hop_counts_from(const Adjacency& adj, int source, int max_hop,
                                 std::uint64_t* message_count = nullptr);

/// One BFS flood per anchor.
HopTable build_hop_table(const Adjacency& adj, const std::vector<int>& anchors, int max_hop);

/// Hop counts between all node pairs, truncated at max_hop (one BFS per node).
std::vector<std::vector<int>> all_pairs_hops(const Adjacency& adj, int max_hop);

int one_hop_degree(const Adjacency& adj, int node);

/// Mean number of one-hop neighbors over all nodes.
double mean_degree(const Adjacency& adj);

} // namespace khoploc
