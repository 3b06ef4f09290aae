#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "khoploc/connectivity.hpp"
#include "khoploc/geometry.hpp"

namespace khoploc {

/// Gaussian fit of the hop-k distance density: value(d) = exp(-weight*(d - peak)^2 + log_scale).
struct GaussianFit {
    double weight = 0.0;     // curvature of the log density, 1/length^2
    double peak = 0.0;       // most likely distance for this hop count
    double log_scale = 0.0;  // log of the density at the peak
};

struct PerHopFit {
    int hop = 0;
    GaussianFit fit;
};

/// Provenance of a trained model, serialized in the file header.
struct FitModelInfo {
    ConnectionModel model = ConnectionModel::rayleigh(1.0, 2.0);
    std::optional<Region> region;
    double density = 0.0;
    int max_hop = 0;
    int degree = 0;
    int iterations = 0;
    std::uint64_t seed = 0;
};

/// Trained hop-distance model: per-hop Gaussian parameters smoothed by
/// polynomials in the hop count. Localization evaluates the polynomials.
class FitModel {
public:
    FitModel() = default;
    FitModel(FitModelInfo info, std::vector<double> poly_weight, std::vector<double> poly_peak,
             std::vector<double> poly_log_scale, std::vector<PerHopFit> per_hop);

    const FitModelInfo& info() const { return info_; }
    int max_hop() const { return info_.max_hop; }
    double effective_range() const { return info_.model.effective_range(); }
    const std::vector<PerHopFit>& per_hop() const { return per_hop_; }
    const std::vector<double>& poly_weight() const { return poly_weight_; }
    const std::vector<double>& poly_peak() const { return poly_peak_; }
    const std::vector<double>& poly_log_scale() const { return poly_log_scale_; }

    /// Smoothed residual weight A(k), clamped below at 1e-6 / r_eff^2 so the
    /// likelihood term always stays a penalty.
    double weight(int hop) const;
    /// Smoothed most-likely distance B(k), clamped below at 0.
    double peak_distance(int hop) const;
    /// Smoothed C(k); kept for diagnostics, unused by localization.
    double log_scale(int hop) const;

    void serialize(std::ostream& out) const;
    std::string serialize() const;
    static FitModel parse(std::istream& in);
    static FitModel parse(const std::string& text);
    void save(const std::string& path) const;
    static FitModel load(const std::string& path);

private:
    void check_hop(int hop) const;
    FitModelInfo info_;
    std::vector<double> poly_weight_;
    std::vector<double> poly_peak_;
    std::vector<double> poly_log_scale_;
    std::vector<PerHopFit> per_hop_;
};

/// Evaluates a polynomial with ascending coefficients at x.
double eval_polynomial(const std::vector<double>& coeffs, double x);

} // namespace khoploc
