#pragma once

#include <cstdint>
#include <vector>

#include "khoploc/connectivity.hpp"
#include "khoploc/fit_model.hpp"
#include "khoploc/geometry.hpp"
#include "khoploc/graph.hpp"

namespace khoploc {

/// Partition of the disk of radius max_distance into `shells` concentric
/// shells of width 2*delta, delta = max_distance / (2 * shells). Shell l
/// (1-based) covers (2*delta*(l-1), 2*delta*l] and has center delta*(2l-1).
struct ShellSpec {
    double max_distance = 0.0;
    int shells = 0;

    static ShellSpec create(double max_distance, int shells);
    /// Default sizing: max_distance = 1.2 * max_hop * r_eff, shell width about
    /// r_eff / 10 (so 12 * max_hop shells).
    static ShellSpec auto_for(double effective_range, int max_hop);

    double half_width() const { return max_distance / (2.0 * shells); }
    double center(int shell) const { return half_width() * (2.0 * shell - 1.0); }
    /// 1-based shell index for distance d; 0 if d exceeds max_distance.
    /// d = 0 (coincident nodes) lands in shell 1.
    int shell_of(double d) const;
};

/// Discretized estimate of the joint hop/distance density over pairs:
/// value(k, l) estimates p(k|d_l) p(d_l). Counts are raw pair tallies; every
/// pair seen (reachable or not, within range or not) increments total_pairs.
struct ShellHistogram {
    ShellSpec spec;
    int max_hop = 0;
    std::vector<std::uint64_t> counts; // max_hop rows x shells cols, row-major
    std::uint64_t total_pairs = 0;

    static ShellHistogram zero(ShellSpec spec, int max_hop);

    std::uint64_t count(int hop, int shell) const;
    /// Density estimate: count / (total_pairs * shell width).
    double value(int hop, int shell) const;
    /// Merge another histogram over the same spec (integer sums, order-free).
    void merge(const ShellHistogram& other);
};

struct TrainingConfig {
    Region region = Region::square(10.0);
    ConnectionModel model = ConnectionModel::rayleigh(1.0, 2.0);
    double density = 0.0;        // nodes per unit area
    int iterations = 100;
    int max_hop = 20;
    ShellSpec shells;
    std::uint64_t seed = 0;
};

/// Bins one network realization into the histogram: for every unordered node
/// pair with finite hop count <= max_hop and distance within range, bumps the
/// matching cell; every pair bumps total_pairs.
void accumulate_histogram(const std::vector<Point>& points,
                          const std::vector<std::vector<int>>& hop_matrix, ShellHistogram& hist);

/// Monte Carlo estimation of the hop/distance density: `iterations` rounds of
/// sample -> link -> all-pairs hops -> bin. Each round draws from a stream
/// derived from (seed, round), so the result is bit-identical for any thread
/// count.
ShellHistogram run_training(const TrainingConfig& config, int threads = 1);

/// Weighted log-domain least-squares fit of one hop row to a Gaussian.
/// Throws InsufficientDataError with fewer than 3 populated shells and
/// DegenerateFitError when the log density is not concave.
GaussianFit fit_per_hop_gaussian(const ShellHistogram& hist, int hop);

/// Ordinary least-squares polynomials of the given degree in k through the
/// per-hop weight / peak / log-scale sequences.
FitModel fit_hop_polynomials(const std::vector<PerHopFit>& per_hop, int degree,
                             const FitModelInfo& info);

/// Node density from the mean one-hop degree and the model's average
/// communication area (infinite-plane approximation).
double estimate_density(double mean_degree, const ConnectionModel& model);
/// Same, but with the average communication area taken over a known
/// deployment region, which removes the border bias.
double estimate_density(double mean_degree, const ConnectionModel& model, const Region& region);

/// Full training pipeline: histogram, per-hop Gaussian fits (hops that fail to
/// fit are skipped), polynomial smoothing.
FitModel train_model(const TrainingConfig& config, int degree, int threads = 1);

} // namespace khoploc
