#include "khoploc/connectivity.hpp"

#include <algorithm>
#include <cmath>

#include "khoploc/errors.hpp"

namespace khoploc {

ConnectionModel ConnectionModel::rayleigh(double beta, double eta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw ParameterError("ConnectionModel::rayleigh: beta must be positive");
    if (!(eta >= 1.0) || !std::isfinite(eta))
        throw ParameterError("ConnectionModel::rayleigh: eta must be >= 1");
    ConnectionModel m;
    m.kind_ = Kind::Rayleigh;
    m.beta_ = beta;
    m.eta_ = eta;
    return m;
}

ConnectionModel ConnectionModel::qudg(double d_max, double doi) {
    if (!(d_max > 0.0) || !std::isfinite(d_max))
        throw ParameterError("ConnectionModel::qudg: d_max must be positive");
    if (!(doi > 1.0) || !std::isfinite(doi))
        throw ParameterError("ConnectionModel::qudg: DOI must be > 1");
    ConnectionModel m;
    m.kind_ = Kind::Qudg;
    m.d_max_ = d_max;
    m.doi_ = doi;
    return m;
}

double ConnectionModel::effective_range() const {
    if (kind_ == Kind::Rayleigh) return std::pow(beta_, -1.0 / eta_);
    return d_max_;
}

double connect_prob(const ConnectionModel& model, double d) {
    if (d < 0.0) throw ParameterError("connect_prob: distance must be nonnegative");
    if (model.kind() == ConnectionModel::Kind::Rayleigh)
        return std::exp(-model.beta() * std::pow(d, model.eta()));
    const double d_max = model.d_max();
    const double doi = model.doi();
    if (d < d_max / doi) return 1.0;
    if (d > d_max) return 0.0;
    return doi * (d_max - d) / (d_max * (doi - 1.0));
}

namespace {

// Adaptive Simpson on [a, b] with absolute tolerance tol.
inline double simpson_rule(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double fa, double b, double fb, double m, double fm,
                        double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_rule(a, fa, m, fm, flm);
    const double right = simpson_rule(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0) throw NumericalError("adaptive_simpson: recursion limit reached");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson_rule(a, fa, b, fb, fm);
    return adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, 60);
}

} // namespace

double effective_area(const ConnectionModel& model, double quadrature_tol) {
    if (!(quadrature_tol > 0.0))
        throw ParameterError("effective_area: tolerance must be positive");
    const auto integrand = [&](double r) { return r * connect_prob(model, r); };
    const double two_pi = 2.0 * M_PI;
    if (model.kind() == ConnectionModel::Kind::Qudg) {
        // Split at the kink where the linear ramp starts.
        const double knee = model.d_max() / model.doi();
        const double inner = integrate(integrand, 0.0, knee, quadrature_tol / two_pi / 2.0);
        const double outer = integrate(integrand, knee, model.d_max(), quadrature_tol / two_pi / 2.0);
        return two_pi * (inner + outer);
    }
    // Truncate the infinite upper limit where H drops below 1e-12; the tail
    // beyond that contributes far less than any sane tolerance.
    const double r0 = model.effective_range();
    const double r_upper = r0 * std::pow(12.0 * std::log(10.0), 1.0 / model.eta());
    return two_pi * integrate(integrand, 0.0, r_upper, quadrature_tol / two_pi);
}

double region_effective_area(const ConnectionModel& model, const Region& region,
                             std::size_t pairs, std::uint64_t seed) {
    if (pairs == 0) throw ParameterError("region_effective_area: need at least one pair");
    Rng rng(derive_seed(seed, 0));
    const double s = region.side();
    double sum = 0.0;
    std::size_t done = 0;
    while (done < pairs) {
        Point a{rng.uniform(0.0, s), rng.uniform(0.0, s)};
        if (!region_contains(region, a)) continue;
        Point b{rng.uniform(0.0, s), rng.uniform(0.0, s)};
        if (!region_contains(region, b)) continue;
        sum += connect_prob(model, distance(a, b));
        ++done;
    }
    return region_area(region) * sum / static_cast<double>(pairs);
}

bool Adjacency::has_edge(int u, int v) const {
    const auto& nb = neighbors[static_cast<std::size_t>(u)];
    return std::find(nb.begin(), nb.end(), v) != nb.end();
}

Adjacency realize_links(const std::vector<Point>& points, const ConnectionModel& model, Rng& rng) {
    if (points.empty()) throw ParameterError("realize_links: points must be non-empty");
    const int n = static_cast<int>(points.size());
    Adjacency adj;
    adj.n = n;
    adj.neighbors.assign(static_cast<std::size_t>(n), {});
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double h = connect_prob(model, distance(points[i], points[j]));
            const double zeta = rng.uniform01();
            if (zeta < h) {
                adj.neighbors[static_cast<std::size_t>(i)].push_back(j);
                adj.neighbors[static_cast<std::size_t>(j)].push_back(i);
                ++adj.edge_count;
            }
        }
    }
    return adj;
}

} // namespace khoploc
