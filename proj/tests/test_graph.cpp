#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "khoploc/errors.hpp"
#include "khoploc/graph.hpp"
#include "khoploc/rng.hpp"

using namespace khoploc;

namespace {

Adjacency from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Adjacency adj;
    adj.n = n;
    adj.neighbors.assign(static_cast<std::size_t>(n), {});
    for (auto [u, v] : edges) {
        adj.neighbors[static_cast<std::size_t>(u)].push_back(v);
        adj.neighbors[static_cast<std::size_t>(v)].push_back(u);
        ++adj.edge_count;
    }
    return adj;
}

Adjacency random_graph(int n, double edge_prob, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform01() < edge_prob) edges.push_back({i, j});
    return from_edges(n, edges);
}

// Unit-weight Floyd-Warshall, capped at max_hop: the independent oracle.
std::vector<std::vector<int>> floyd_warshall_capped(const Adjacency& adj, int max_hop) {
    const int n = adj.n;
    const int inf = 1 << 20;
    std::vector<std::vector<int>> dist(static_cast<std::size_t>(n),
                                       std::vector<int>(static_cast<std::size_t>(n), inf));
    for (int i = 0; i < n; ++i) dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
    for (int u = 0; u < n; ++u)
        for (int v : adj.neighbors[static_cast<std::size_t>(u)])
            dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::min(
                    dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                    dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                        dist[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
    for (auto& row : dist)
        for (auto& d : row)
            if (d > max_hop) d = kUnreachable;
    return dist;
}

} // namespace

TEST_CASE("graph: path graph hop counts") {
    const auto path = from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(hop_counts_from(path, 0, 10) == std::vector<int>{0, 1, 2, 3});
    CHECK(hop_counts_from(path, 0, 2) == std::vector<int>{0, 1, 2, kUnreachable});
    CHECK_THROWS_AS(hop_counts_from(path, 7, 10), ParameterError);
    CHECK_THROWS_AS(hop_counts_from(path, 0, 0), ParameterError);
}

TEST_CASE("graph: BFS equals capped Floyd-Warshall on random graphs") {
    Rng rng(404);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_index(29));
        const auto adj = random_graph(n, 0.15, rng);
        const int cap = 1 + static_cast<int>(rng.uniform_index(6));
        const auto oracle = floyd_warshall_capped(adj, cap);
        for (int s = 0; s < n; ++s)
            CHECK(hop_counts_from(adj, s, cap) == oracle[static_cast<std::size_t>(s)]);
    }
}

TEST_CASE("graph: hop table basics") {
    const auto path = from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    const auto table = build_hop_table(path, {0}, 10);
    CHECK(table.hops.size() == 1);
    CHECK(table.hops[0] == hop_counts_from(path, 0, 10));
    CHECK(table.hops[0][0] == 0);

    // complete graph: all finite entries are 0 or 1
    std::vector<std::pair<int, int>> k5;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) k5.push_back({i, j});
    const auto complete = from_edges(5, k5);
    const auto t5 = build_hop_table(complete, {0, 3}, 4);
    for (const auto& row : t5.hops)
        for (int h : row) CHECK((h == 0 || h == 1));

    CHECK_THROWS_AS(build_hop_table(path, {}, 10), ParameterError);
    CHECK_THROWS_AS(build_hop_table(path, {9}, 10), ParameterError);
}

TEST_CASE("graph: adjacent nodes differ by at most one hop") {
    Rng rng(808);
    const auto adj = random_graph(40, 0.12, rng);
    const auto table = build_hop_table(adj, {0, 5, 11}, 6);
    for (std::size_t a = 0; a < table.hops.size(); ++a) {
        for (int u = 0; u < adj.n; ++u) {
            for (int v : adj.neighbors[static_cast<std::size_t>(u)]) {
                const int hu = table.hops[a][static_cast<std::size_t>(u)];
                const int hv = table.hops[a][static_cast<std::size_t>(v)];
                if (hu != kUnreachable && hv != kUnreachable) CHECK(std::abs(hu - hv) <= 1);
            }
        }
    }
}

TEST_CASE("graph: hop counts are relabeling-equivariant") {
    Rng rng(909);
    const auto adj = random_graph(25, 0.2, rng);
    std::vector<int> perm(25);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[rng.uniform_index(i)]);

    Adjacency relabeled;
    relabeled.n = adj.n;
    relabeled.neighbors.assign(static_cast<std::size_t>(adj.n), {});
    relabeled.edge_count = adj.edge_count;
    for (int u = 0; u < adj.n; ++u)
        for (int v : adj.neighbors[static_cast<std::size_t>(u)])
            relabeled.neighbors[static_cast<std::size_t>(perm[static_cast<std::size_t>(u)])]
                .push_back(perm[static_cast<std::size_t>(v)]);

    const auto base = hop_counts_from(adj, 3, 5);
    const auto moved = hop_counts_from(relabeled, perm[3], 5);
    for (int v = 0; v < adj.n; ++v)
        CHECK(base[static_cast<std::size_t>(v)] ==
              moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])]);
}

TEST_CASE("graph: degrees") {
    const auto single = from_edges(3, {{0, 1}});
    CHECK(one_hop_degree(single, 2) == 0);
    std::vector<std::pair<int, int>> k5;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) k5.push_back({i, j});
    const auto complete = from_edges(5, k5);
    for (int v = 0; v < 5; ++v) CHECK(one_hop_degree(complete, v) == 4);

    Rng rng(77);
    const auto adj = random_graph(30, 0.3, rng);
    std::size_t total = 0;
    for (int v = 0; v < adj.n; ++v) total += static_cast<std::size_t>(one_hop_degree(adj, v));
    CHECK(total == 2 * adj.edge_count);
    CHECK(mean_degree(adj) == doctest::Approx(static_cast<double>(total) / adj.n));
}

TEST_CASE("graph: message count grows like anchors times nodes at fixed degree") {
    // Fixed mean degree: scale the region with N so the relaxation count per
    // anchor stays proportional to N.
    Rng rng(616);
    std::vector<double> ratios;
    for (int n : {100, 200, 300, 400}) {
        const double side = std::sqrt(n / 3.0);
        const auto points = sample_points(Region::square(side), n, rng);
        const auto adj = realize_links(points, ConnectionModel::rayleigh(1.0, 2.0), rng);
        const int m = 8;
        std::vector<int> anchors(m);
        std::iota(anchors.begin(), anchors.end(), 0);
        const auto table = build_hop_table(adj, anchors, 20);
        ratios.push_back(static_cast<double>(table.messages) / (m * n));
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    CHECK(*hi / *lo < 1.6);
}
