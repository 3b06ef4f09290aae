#pragma once

#include <vector>

#include "khoploc/fit_model.hpp"
#include "khoploc/geometry.hpp"

namespace khoploc {

/// One usable anchor seen by a target: known position plus the measured
/// minimum hop count (unreachable anchors are excluded before construction).
struct AnchorObservation {
    Point position;
    int hop = 0;
};

struct SolverOptions {
    double gradient_tol = 1e-6;
    int max_iterations = 500;
};

struct Estimate {
    Point position;
    double objective = 0.0;
    bool converged = false;
    int iterations = 0;
    int anchors_used = 0;
    /// Fewer than 3 usable anchors: the position is only weakly constrained.
    bool low_confidence = false;
};

struct Gradient {
    double dx = 0.0;
    double dy = 0.0;
};

/// Negative log likelihood up to constants: sum of weight(h_i) * (d_i - peak(h_i))^2.
double mle_objective(Point candidate, const std::vector<AnchorObservation>& obs,
                     const FitModel& fit);

/// Analytic gradient of mle_objective. Throws NumericalError when the
/// candidate is within the singularity guard distance of an anchor (the
/// caller perturbs and retries).
Gradient mle_gradient(Point candidate, const std::vector<AnchorObservation>& obs,
                      const FitModel& fit);

/// Gradient descent with Armijo backtracking from 5 starts: the 1/hop
/// weighted anchor centroid and its 4 perturbations by the nearest-hop peak
/// distance. Returns the start with the lowest final objective.
Estimate localize_khoploc(const std::vector<AnchorObservation>& obs, const FitModel& fit,
                          const SolverOptions& opts = {});

/// Per-anchor average one-hop distance, calibrated from anchor-to-anchor
/// ground truth: sum of distances over sum of hop counts. Anchors with no
/// finite hop count to any other anchor get NaN.
std::vector<double> dvhop_hop_sizes(const std::vector<Point>& anchor_positions,
                                    const std::vector<std::vector<int>>& anchor_hops);

/// DV-hop baseline: estimated distances hop_size * h_i with the hop size of
/// the minimum-hop anchor, then linear least-squares trilateration.
/// hop_sizes[i] is the hop size of the anchor behind obs[i].
Estimate localize_dvhop(const std::vector<AnchorObservation>& obs,
                        const std::vector<double>& hop_sizes);

} // namespace khoploc
