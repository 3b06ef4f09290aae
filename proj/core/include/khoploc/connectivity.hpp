#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "khoploc/geometry.hpp"
#include "khoploc/rng.hpp"

namespace khoploc {

/// Pair connectedness model: probability H(d) that two nodes a distance d
/// apart share a direct link. Either Rayleigh fading, H(d) = exp(-beta*d^eta),
/// or a quasi unit disk graph with cutoff d_max and irregularity DOI.
class ConnectionModel {
public:
    enum class Kind { Rayleigh, Qudg };

    static ConnectionModel rayleigh(double beta, double eta);
    static ConnectionModel qudg(double d_max, double doi);

    Kind kind() const { return kind_; }
    double beta() const { return beta_; }
    double eta() const { return eta_; }
    double d_max() const { return d_max_; }
    double doi() const { return doi_; }

    /// Effective communication range: beta^(-1/eta) for Rayleigh, d_max for QUDG.
    double effective_range() const;

private:
    ConnectionModel() = default;
    Kind kind_ = Kind::Rayleigh;
    double beta_ = 1.0;
    double eta_ = 2.0;
    double d_max_ = 1.0;
    double doi_ = 2.0;
};

double connect_prob(const ConnectionModel& model, double d);

/// Average communication area A_e = 2*pi * integral of r*H(r) dr, evaluated by
/// adaptive Simpson quadrature to the given absolute tolerance.
double effective_area(const ConnectionModel& model, double quadrature_tol = 1e-9);

/// Average communication area of a node deployed in `region`: the mean over
/// uniform node pairs (X, Y) of H(|X-Y|), times the region area. Estimated by
/// seeded Monte Carlo with `pairs` samples. Unlike effective_area this
/// accounts for border effects, which matter when the region is only a few
/// effective ranges wide.
double region_effective_area(const ConnectionModel& model, const Region& region,
                             std::size_t pairs = 2'000'000, std::uint64_t seed = 0x41524541ULL);

/// Undirected graph over node indices [0, n).
struct Adjacency {
    int n = 0;
    std::vector<std::vector<int>> neighbors;
    std::size_t edge_count = 0;

    bool has_edge(int u, int v) const;
};

/// Realizes links between all unordered pairs: pair (i, j), i < j in index
/// order, is linked iff a fresh draw zeta in [0,1) is below H(|p_i - p_j|).
Adjacency realize_links(const std::vector<Point>& points, const ConnectionModel& model, Rng& rng);

} // namespace khoploc
