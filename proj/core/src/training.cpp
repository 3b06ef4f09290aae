#include "khoploc/training.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "khoploc/errors.hpp"
#include "khoploc/parallel.hpp"
#include "khoploc/rng.hpp"

namespace khoploc {

ShellSpec ShellSpec::create(double max_distance, int shells) {
    if (!(max_distance > 0.0)) throw ParameterError("ShellSpec: max_distance must be positive");
    if (shells < 1) throw ParameterError("ShellSpec: need at least one shell");
    return ShellSpec{max_distance, shells};
}

ShellSpec ShellSpec::auto_for(double effective_range, int max_hop) {
    if (!(effective_range > 0.0)) throw ParameterError("ShellSpec: effective range must be positive");
    if (max_hop < 1) throw ParameterError("ShellSpec: max_hop must be >= 1");
    return create(1.2 * max_hop * effective_range, 12 * max_hop);
}

int ShellSpec::shell_of(double d) const {
    if (d < 0.0) throw ParameterError("ShellSpec: negative distance");
    if (d > max_distance) return 0;
    const int idx = static_cast<int>(std::ceil(d / (2.0 * half_width())));
    if (idx < 1) return 1;
    if (idx > shells) return shells; // d == max_distance up to rounding
    return idx;
}

ShellHistogram ShellHistogram::zero(ShellSpec spec, int max_hop) {
    if (max_hop < 1) throw ParameterError("ShellHistogram: max_hop must be >= 1");
    ShellHistogram h;
    h.spec = spec;
    h.max_hop = max_hop;
    h.counts.assign(static_cast<std::size_t>(max_hop) * static_cast<std::size_t>(spec.shells), 0);
    return h;
}

std::uint64_t ShellHistogram::count(int hop, int shell) const {
    return counts[static_cast<std::size_t>(hop - 1) * static_cast<std::size_t>(spec.shells) +
                  static_cast<std::size_t>(shell - 1)];
}

double ShellHistogram::value(int hop, int shell) const {
    if (total_pairs == 0) return 0.0;
    return static_cast<double>(count(hop, shell)) /
           (static_cast<double>(total_pairs) * 2.0 * spec.half_width());
}

void ShellHistogram::merge(const ShellHistogram& other) {
    if (other.max_hop != max_hop || other.spec.shells != spec.shells ||
        other.spec.max_distance != spec.max_distance)
        throw ParameterError("ShellHistogram::merge: incompatible layouts");
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    total_pairs += other.total_pairs;
}

void accumulate_histogram(const std::vector<Point>& points,
                          const std::vector<std::vector<int>>& hop_matrix, ShellHistogram& hist) {
    const std::size_t n = points.size();
    if (hop_matrix.size() != n)
        throw ParameterError("accumulate_histogram: hop matrix does not cover all nodes");
    const std::size_t cols = static_cast<std::size_t>(hist.spec.shells);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            ++hist.total_pairs;
            const int k = hop_matrix[i][j];
            if (k < 1 || k > hist.max_hop) continue;
            const int l = hist.spec.shell_of(distance(points[i], points[j]));
            if (l < 1) continue;
            ++hist.counts[static_cast<std::size_t>(k - 1) * cols + static_cast<std::size_t>(l - 1)];
        }
    }
}

ShellHistogram run_training(const TrainingConfig& config, int threads) {
    if (config.iterations < 1) throw ParameterError("run_training: iterations must be >= 1");
    if (!(config.density > 0.0)) throw ParameterError("run_training: density must be positive");
    const int n = static_cast<int>(std::lround(config.density * region_area(config.region)));
    std::vector<ShellHistogram> partial(
        static_cast<std::size_t>(config.iterations),
        ShellHistogram::zero(config.shells, config.max_hop));
    parallel_for(config.iterations, threads, [&](int iter) {
        Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(iter)));
        const auto points = sample_points(config.region, n, rng);
        if (points.size() < 2) return;
        const auto adj = realize_links(points, config.model, rng);
        const auto hops = all_pairs_hops(adj, config.max_hop);
        accumulate_histogram(points, hops, partial[static_cast<std::size_t>(iter)]);
    });
    ShellHistogram total = ShellHistogram::zero(config.shells, config.max_hop);
    for (const auto& h : partial) total.merge(h);
    return total;
}

GaussianFit fit_per_hop_gaussian(const ShellHistogram& hist, int hop) {
    if (hop < 1 || hop > hist.max_hop)
        throw ParameterError("fit_per_hop_gaussian: hop outside histogram range");
    std::vector<int> populated;
    for (int l = 1; l <= hist.spec.shells; ++l)
        if (hist.count(hop, l) > 0) populated.push_back(l);
    if (populated.size() < 3)
        throw InsufficientDataError("fit_per_hop_gaussian: fewer than 3 populated shells");

    // Weighted least squares on ln(value) = a d^2 + b d + c, weights = counts.
    const auto rows = static_cast<Eigen::Index>(populated.size());
    Eigen::MatrixXd design(rows, 3);
    Eigen::VectorXd target(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const int l = populated[static_cast<std::size_t>(r)];
        const double d = hist.spec.center(l);
        const double w = std::sqrt(static_cast<double>(hist.count(hop, l)));
        design(r, 0) = w * d * d;
        design(r, 1) = w * d;
        design(r, 2) = w;
        target(r) = w * std::log(hist.value(hop, l));
    }
    const Eigen::Vector3d coeffs = design.colPivHouseholderQr().solve(target);
    const double a = coeffs(0), b = coeffs(1), c = coeffs(2);
    if (!(a < 0.0))
        throw DegenerateFitError("fit_per_hop_gaussian: log density is not concave");
    GaussianFit fit;
    fit.weight = -a;
    fit.peak = -b / (2.0 * a);
    fit.log_scale = c - b * b / (4.0 * a);
    return fit;
}

FitModel fit_hop_polynomials(const std::vector<PerHopFit>& per_hop, int degree,
                             const FitModelInfo& info) {
    if (degree < 0) throw ParameterError("fit_hop_polynomials: degree must be nonnegative");
    if (static_cast<int>(per_hop.size()) < degree + 1)
        throw InsufficientDataError("fit_hop_polynomials: need at least degree+1 per-hop fits");
    const auto rows = static_cast<Eigen::Index>(per_hop.size());
    Eigen::MatrixXd vandermonde(rows, degree + 1);
    Eigen::MatrixXd targets(rows, 3);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& p = per_hop[static_cast<std::size_t>(r)];
        double power = 1.0;
        for (int c = 0; c <= degree; ++c) {
            vandermonde(r, c) = power;
            power *= static_cast<double>(p.hop);
        }
        targets(r, 0) = p.fit.weight;
        targets(r, 1) = p.fit.peak;
        targets(r, 2) = p.fit.log_scale;
    }
    const Eigen::MatrixXd solution = vandermonde.colPivHouseholderQr().solve(targets);
    const auto column = [&](int c) {
        std::vector<double> out(static_cast<std::size_t>(degree) + 1);
        for (int i = 0; i <= degree; ++i) out[static_cast<std::size_t>(i)] = solution(i, c);
        return out;
    };
    FitModelInfo full = info;
    full.degree = degree;
    return FitModel(full, column(0), column(1), column(2), per_hop);
}

double estimate_density(double mean_degree, const ConnectionModel& model) {
    if (mean_degree < 0.0) throw ParameterError("estimate_density: mean degree must be >= 0");
    return mean_degree / effective_area(model);
}

double estimate_density(double mean_degree, const ConnectionModel& model, const Region& region) {
    if (mean_degree < 0.0) throw ParameterError("estimate_density: mean degree must be >= 0");
    return mean_degree / region_effective_area(model, region);
}

FitModel train_model(const TrainingConfig& config, int degree, int threads) {
    const ShellHistogram hist = run_training(config, threads);
    std::vector<PerHopFit> per_hop;
    for (int k = 1; k <= config.max_hop; ++k) {
        try {
            per_hop.push_back(PerHopFit{k, fit_per_hop_gaussian(hist, k)});
        } catch (const InsufficientDataError&) {
            // sparse tail hop counts are simply skipped
        } catch (const DegenerateFitError&) {
        }
    }
    FitModelInfo info;
    info.model = config.model;
    info.region = config.region;
    info.density = config.density;
    info.max_hop = config.max_hop;
    info.iterations = config.iterations;
    info.seed = config.seed;
    return fit_hop_polynomials(per_hop, degree, info);
}

} // namespace khoploc
