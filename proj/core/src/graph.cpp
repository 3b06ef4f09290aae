#include "khoploc/graph.hpp"

#include <queue>

#include "khoploc/errors.hpp"

namespace khoploc {

std::vector<int> hop_counts_from(const Adjacency& adj, int source, int max_hop,
                                 std::uint64_t* message_count) {
    if (source < 0 || source >= adj.n)
        throw ParameterError("hop_counts_from: source out of range");
    if (max_hop < 1)
        throw ParameterError("hop_counts_from: max_hop must be >= 1");
    std::vector<int> hops(static_cast<std::size_t>(adj.n), kUnreachable);
    hops[static_cast<std::size_t>(source)] = 0;
    std::queue<int> frontier;
    frontier.push(source);
    std::uint64_t relaxations = 0;
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop();
        const int du = hops[static_cast<std::size_t>(u)];
        if (du >= max_hop) continue; // truncated: u does not rebroadcast
        for (int v : adj.neighbors[static_cast<std::size_t>(u)]) {
            ++relaxations;
            if (hops[static_cast<std::size_t>(v)] == kUnreachable) {
                hops[static_cast<std::size_t>(v)] = du + 1;
                frontier.push(v);
            }
        }
    }
    if (message_count) *message_count += relaxations;
    return hops;
}

HopTable build_hop_table(const Adjacency& adj, const std::vector<int>& anchors, int max_hop) {
    if (anchors.empty())
        throw ParameterError("build_hop_table: need at least one anchor");
    for (int a : anchors)
        if (a < 0 || a >= adj.n) throw ParameterError("build_hop_table: anchor out of range");
    HopTable table;
    table.anchors = anchors;
    table.max_hop = max_hop;
    table.hops.reserve(anchors.size());
    for (int a : anchors)
        table.hops.push_back(hop_counts_from(adj, a, max_hop, &table.messages));
    return table;
}

std::vector<std::vector<int>> all_pairs_hops(const Adjacency& adj, int max_hop) {
    std::vector<std::vector<int>> hops;
    hops.reserve(static_cast<std::size_t>(adj.n));
    for (int v = 0; v < adj.n; ++v)
        hops.push_back(hop_counts_from(adj, v, max_hop));
    return hops;
}

int one_hop_degree(const Adjacency& adj, int node) {
    if (node < 0 || node >= adj.n)
        throw ParameterError("one_hop_degree: node out of range");
    return static_cast<int>(adj.neighbors[static_cast<std::size_t>(node)].size());
}

double mean_degree(const Adjacency& adj) {
    if (adj.n == 0) return 0.0;
    return 2.0 * static_cast<double>(adj.edge_count) / static_cast<double>(adj.n);
}

} // namespace khoploc
