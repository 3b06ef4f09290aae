#include "khoploc/localization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "khoploc/errors.hpp"

namespace khoploc {

double mle_objective(Point candidate, const std::vector<AnchorObservation>& obs,
                     const FitModel& fit) {
    if (obs.empty()) throw ParameterError("mle_objective: no observations");
    double total = 0.0;
    for (const auto& o : obs) {
        const double d = distance(candidate, o.position);
        const double r = d - fit.peak_distance(o.hop);
        total += fit.weight(o.hop) * r * r;
    }
    return total;
}

Gradient mle_gradient(Point candidate, const std::vector<AnchorObservation>& obs,
                      const FitModel& fit) {
    if (obs.empty()) throw ParameterError("mle_gradient: no observations");
    const double guard = 1e-9 * fit.effective_range();
    Gradient g;
    for (const auto& o : obs) {
        const double d = distance(candidate, o.position);
        if (d < guard)
            throw NumericalError("mle_gradient: candidate within singularity guard of an anchor");
        const double scale = 2.0 * fit.weight(o.hop) * (d - fit.peak_distance(o.hop)) / d;
        g.dx += scale * (candidate.x - o.position.x);
        g.dy += scale * (candidate.y - o.position.y);
    }
    return g;
}

namespace {

// Nudges a candidate off any anchor it coincides with, so the gradient exists.
Point nudge_off_anchors(Point p, const std::vector<AnchorObservation>& obs, double guard) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        bool clear = true;
        for (const auto& o : obs) {
            if (distance(p, o.position) < guard) {
                p.x += guard;
                clear = false;
                break;
            }
        }
        if (clear) break;
    }
    return p;
}

struct DescentResult {
    Point position;
    double objective = 0.0;
    bool converged = false;
    int iterations = 0;
};

DescentResult descend(Point start, const std::vector<AnchorObservation>& obs, const FitModel& fit,
                      const SolverOptions& opts) {
    const double guard = 1e-9 * fit.effective_range();
    double weight_sum = 0.0;
    for (const auto& o : obs) weight_sum += fit.weight(o.hop);
    const double base_step = 1.0 / (2.0 * weight_sum);

    DescentResult res;
    res.position = nudge_off_anchors(start, obs, guard);
    res.objective = mle_objective(res.position, obs, fit);
    double step = base_step;
    constexpr double armijo_c = 1e-4;
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        res.iterations = iter;
        const Gradient g = mle_gradient(res.position, obs, fit);
        const double gnorm2 = g.dx * g.dx + g.dy * g.dy;
        if (std::sqrt(gnorm2) < opts.gradient_tol) {
            res.converged = true;
            return res;
        }
        step = std::min(step * 2.0, base_step * 1e6);
        bool moved = false;
        while (step > base_step * 1e-12) {
            const Point trial = nudge_off_anchors(
                Point{res.position.x - step * g.dx, res.position.y - step * g.dy}, obs, guard);
            const double f_trial = mle_objective(trial, obs, fit);
            if (f_trial <= res.objective - armijo_c * step * gnorm2) {
                res.position = trial;
                res.objective = f_trial;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) return res; // line search stalled
    }
    res.iterations = opts.max_iterations;
    return res;
}

} // namespace

Estimate localize_khoploc(const std::vector<AnchorObservation>& obs, const FitModel& fit,
                          const SolverOptions& opts) {
    if (obs.empty()) throw ParameterError("localize_khoploc: no observations");

    double wx = 0.0, wy = 0.0, wsum = 0.0;
    int min_hop = obs.front().hop;
    for (const auto& o : obs) {
        const double w = 1.0 / static_cast<double>(o.hop);
        wx += w * o.position.x;
        wy += w * o.position.y;
        wsum += w;
        min_hop = std::min(min_hop, o.hop);
    }
    const Point centroid{wx / wsum, wy / wsum};
    const double spread = fit.peak_distance(min_hop);
    const Point starts[5] = {
        centroid,
        {centroid.x + spread, centroid.y},
        {centroid.x - spread, centroid.y},
        {centroid.x, centroid.y + spread},
        {centroid.x, centroid.y - spread},
    };

    DescentResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (const Point& start : starts) {
        const DescentResult r = descend(start, obs, fit, opts);
        if (r.objective < best.objective) best = r;
    }
    Estimate est;
    est.position = best.position;
    est.objective = best.objective;
    est.converged = best.converged;
    est.iterations = best.iterations;
    est.anchors_used = static_cast<int>(obs.size());
    est.low_confidence = obs.size() < 3;
    return est;
}

std::vector<double> dvhop_hop_sizes(const std::vector<Point>& anchor_positions,
                                    const std::vector<std::vector<int>>& anchor_hops) {
    const std::size_t m = anchor_positions.size();
    if (m < 2) throw ParameterError("dvhop_hop_sizes: need at least two anchors");
    if (anchor_hops.size() != m)
        throw ParameterError("dvhop_hop_sizes: hop matrix must be anchors x anchors");
    std::vector<double> sizes(m, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < m; ++i) {
        if (anchor_hops[i].size() != m)
            throw ParameterError("dvhop_hop_sizes: hop matrix must be anchors x anchors");
        double dist_sum = 0.0;
        std::uint64_t hop_sum = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            const int h = anchor_hops[i][j];
            if (h < 1) continue; // unreachable within the hop bound
            dist_sum += distance(anchor_positions[i], anchor_positions[j]);
            hop_sum += static_cast<std::uint64_t>(h);
        }
        if (hop_sum > 0) sizes[i] = dist_sum / static_cast<double>(hop_sum);
    }
    return sizes;
}

Estimate localize_dvhop(const std::vector<AnchorObservation>& obs,
                        const std::vector<double>& hop_sizes) {
    if (obs.size() < 3) throw ParameterError("localize_dvhop: need at least 3 anchors");
    if (hop_sizes.size() != obs.size())
        throw ParameterError("localize_dvhop: hop_sizes must align with observations");

    // Hop size heard from the nearest anchor; fall back to the mean when that
    // anchor could not calibrate one.
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < obs.size(); ++i)
        if (obs[i].hop < obs[nearest].hop) nearest = i;
    double hop_size = hop_sizes[nearest];
    if (std::isnan(hop_size)) {
        double sum = 0.0;
        int cnt = 0;
        for (double s : hop_sizes)
            if (!std::isnan(s)) {
                sum += s;
                ++cnt;
            }
        if (cnt == 0) throw ParameterError("localize_dvhop: no usable hop size");
        hop_size = sum / cnt;
    }

    std::vector<double> est_dist(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i)
        est_dist[i] = hop_size * static_cast<double>(obs[i].hop);

    // Subtract the last circle equation to linearize, then solve the 2x2
    // normal equations.
    const std::size_t m = obs.size();
    const Point pm = obs[m - 1].position;
    const double dm = est_dist[m - 1];
    double a11 = 0.0, a12 = 0.0, a22 = 0.0, b1 = 0.0, b2 = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const Point pi = obs[i].position;
        const double ai = 2.0 * (pm.x - pi.x);
        const double bi = 2.0 * (pm.y - pi.y);
        const double rhs = est_dist[i] * est_dist[i] - dm * dm - pi.x * pi.x - pi.y * pi.y +
                           pm.x * pm.x + pm.y * pm.y;
        a11 += ai * ai;
        a12 += ai * bi;
        a22 += bi * bi;
        b1 += ai * rhs;
        b2 += bi * rhs;
    }
    const double det = a11 * a22 - a12 * a12;
    if (!(det > 1e-12 * std::max(a11 * a22, 1e-300)))
        throw DegenerateGeometryError("localize_dvhop: anchors are collinear");
    const Point position{(a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det};

    double residual = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = distance(position, obs[i].position) - est_dist[i];
        residual += r * r;
    }
    Estimate est;
    est.position = position;
    est.objective = residual;
    est.converged = true;
    est.iterations = 0;
    est.anchors_used = static_cast<int>(m);
    est.low_confidence = false;
    return est;
}

} // namespace khoploc
