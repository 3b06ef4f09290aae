#include "khoploc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "khoploc/errors.hpp"
#include "khoploc/graph.hpp"
#include "khoploc/parallel.hpp"
#include "khoploc/rng.hpp"

namespace khoploc {

namespace {

// Stream indices carved out of the master seed.
constexpr std::uint64_t kCalibrationStream = 0xCA11;
constexpr std::uint64_t kTrainingStream = 0x7EA1;
constexpr std::uint64_t kTrialStreamBase = 0x100000;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

Deployment deploy_with_rng(const Region& region, int n_total, int n_anchors, AnchorMode mode,
                           Rng& rng) {
    Deployment dep;
    if (mode == AnchorMode::FixedLayout) {
        dep.nodes = fixed_anchor_layout(region);
        dep.n_anchors = static_cast<int>(dep.nodes.size());
        if (n_total <= dep.n_anchors)
            throw ParameterError("deploy: n_total must exceed the fixed anchor count");
        const auto targets = sample_points(region, n_total - dep.n_anchors, rng);
        dep.nodes.insert(dep.nodes.end(), targets.begin(), targets.end());
    } else {
        if (n_anchors < 3 || n_anchors >= n_total)
            throw ParameterError("deploy: need 3 <= n_anchors < n_total");
        dep.nodes = sample_points(region, n_total, rng);
        dep.n_anchors = n_anchors;
    }
    return dep;
}

void validate(const ExperimentSpec& spec) {
    if (spec.trials < 1) throw ParameterError("experiment: trials must be >= 1");
    if (spec.algorithms.empty()) throw ParameterError("experiment: no algorithms selected");
    if (spec.training.max_hop < 1) throw ParameterError("experiment: max_hop must be >= 1");
    if (spec.deployment.anchor_mode == AnchorMode::Random &&
        (spec.deployment.n_anchors < 3 || spec.deployment.n_anchors >= spec.deployment.n_total))
        throw ParameterError("experiment: need 3 <= n_anchors < n_total");
}

ShellSpec shell_spec_for(const ExperimentSpec& spec) {
    if (spec.training.max_distance > 0.0 && spec.training.shells > 0)
        return ShellSpec::create(spec.training.max_distance, spec.training.shells);
    return ShellSpec::auto_for(spec.model.effective_range(), spec.training.max_hop);
}

struct TrialOutput {
    std::vector<NodeRecord> records;
    std::uint64_t hop_messages = 0;
};

TrialOutput run_trial(const ExperimentSpec& spec, const FitModel* fit, int trial) {
    Rng rng(derive_seed(spec.seed, kTrialStreamBase + static_cast<std::uint64_t>(trial)));
    const Deployment dep = deploy_with_rng(spec.deployment.region, spec.deployment.n_total,
                                           spec.deployment.n_anchors,
                                           spec.deployment.anchor_mode, rng);
    const int n = static_cast<int>(dep.nodes.size());
    const int m = dep.n_anchors;
    const Adjacency adj = realize_links(dep.nodes, spec.model, rng);

    std::vector<int> anchor_ids(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) anchor_ids[static_cast<std::size_t>(a)] = a;
    const HopTable table = build_hop_table(adj, anchor_ids, spec.training.max_hop);

    const bool want_dvhop =
        std::find(spec.algorithms.begin(), spec.algorithms.end(), Algorithm::DvHop) !=
        spec.algorithms.end();

    std::vector<Point> anchor_positions(dep.nodes.begin(), dep.nodes.begin() + m);
    std::vector<double> hop_sizes;
    if (want_dvhop) {
        std::vector<std::vector<int>> anchor_hops(static_cast<std::size_t>(m),
                                                  std::vector<int>(static_cast<std::size_t>(m)));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                anchor_hops[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    table.hops[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        hop_sizes = dvhop_hop_sizes(anchor_positions, anchor_hops);
    }

    const double r_eff = spec.model.effective_range();
    TrialOutput out;
    out.hop_messages = table.messages;
    out.records.reserve(static_cast<std::size_t>(n - m) * spec.algorithms.size());
    for (int v = m; v < n; ++v) {
        std::vector<AnchorObservation> obs;
        std::vector<double> obs_hop_sizes;
        for (int a = 0; a < m; ++a) {
            const int h = table.hops[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)];
            if (h >= 1 && h <= spec.training.max_hop) {
                obs.push_back(AnchorObservation{anchor_positions[static_cast<std::size_t>(a)], h});
                if (want_dvhop) obs_hop_sizes.push_back(hop_sizes[static_cast<std::size_t>(a)]);
            }
        }
        const int degree = one_hop_degree(adj, v);
        for (Algorithm alg : spec.algorithms) {
            NodeRecord rec;
            rec.trial = trial;
            rec.node_id = v;
            rec.alg = alg;
            rec.truth = dep.nodes[static_cast<std::size_t>(v)];
            rec.degree = degree;
            rec.anchors_used = static_cast<int>(obs.size());
            try {
                Estimate est;
                if (alg == Algorithm::KHopLoc) {
                    if (obs.empty()) throw ParameterError("no reachable anchors");
                    est = localize_khoploc(obs, *fit);
                } else {
                    est = localize_dvhop(obs, obs_hop_sizes);
                }
                rec.estimate = est.position;
                rec.error = distance(est.position, rec.truth);
                rec.error_norm = rec.error / r_eff;
                rec.converged = est.converged;
                rec.status = est.low_confidence ? "low_confidence" : "ok";
            } catch (const DegenerateGeometryError&) {
                rec.status = "failed:degenerate_geometry";
            } catch (const ParameterError&) {
                rec.status = "failed:too_few_anchors";
            } catch (const NumericalError&) {
                rec.status = "failed:numerical";
            }
            out.records.push_back(std::move(rec));
        }
    }
    return out;
}

} // namespace

const char* algorithm_name(Algorithm alg) {
    return alg == Algorithm::KHopLoc ? "khoploc" : "dvhop";
}

const AlgorithmAggregate& ExperimentResult::aggregate(Algorithm alg) const {
    for (const auto& a : aggregates)
        if (a.alg == alg) return a;
    throw ParameterError("ExperimentResult: algorithm not present");
}

Deployment deploy_network(const DeploymentConfig& config) {
    Rng rng(derive_seed(config.seed, kTrialStreamBase));
    return deploy_with_rng(config.region, config.n_total, config.n_anchors, config.anchor_mode,
                           rng);
}

double mean_error(const std::vector<Point>& estimates, const std::vector<Point>& truths) {
    if (estimates.empty() || estimates.size() != truths.size())
        throw ParameterError("mean_error: need equal-length non-empty inputs");
    double sum = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) sum += distance(estimates[i], truths[i]);
    return sum / static_cast<double>(estimates.size());
}

double training_density(const ExperimentSpec& spec) {
    if (spec.density_mode == DensityMode::Known)
        return static_cast<double>(spec.deployment.n_total) / region_area(spec.deployment.region);
    // Estimated: realize one calibration network and read its mean degree.
    Rng rng(derive_seed(spec.seed, kCalibrationStream));
    const auto points = sample_points(spec.deployment.region, spec.deployment.n_total, rng);
    const Adjacency adj = realize_links(points, spec.model, rng);
    const double degree = mean_degree(adj);
    if (spec.region_mode == RegionMode::Known)
        return estimate_density(degree, spec.model, spec.deployment.region);
    return estimate_density(degree, spec.model);
}

FitModel prepare_fit_model(const ExperimentSpec& spec) {
    if (spec.pretrained) return *spec.pretrained;
    if (!spec.fit_model_path.empty()) return FitModel::load(spec.fit_model_path);
    const double rho = training_density(spec);
    TrainingConfig cfg;
    cfg.model = spec.model;
    cfg.density = rho;
    cfg.iterations = spec.training.iterations;
    cfg.max_hop = spec.training.max_hop;
    cfg.shells = shell_spec_for(spec);
    cfg.seed = derive_seed(spec.seed, kTrainingStream);
    if (spec.region_mode == RegionMode::Known) {
        cfg.region = spec.deployment.region;
    } else {
        // Unknown region shape: train on a square holding n_total nodes at the
        // assumed density.
        cfg.region = Region::square(std::sqrt(static_cast<double>(spec.deployment.n_total) / rho));
    }
    return train_model(cfg, spec.training.degree, spec.threads);
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    validate(spec);
    const bool want_khoploc =
        std::find(spec.algorithms.begin(), spec.algorithms.end(), Algorithm::KHopLoc) !=
        spec.algorithms.end();
    std::optional<FitModel> fit;
    if (want_khoploc) fit = prepare_fit_model(spec);

    std::vector<TrialOutput> trials(static_cast<std::size_t>(spec.trials));
    parallel_for(spec.trials, spec.threads, [&](int t) {
        trials[static_cast<std::size_t>(t)] = run_trial(spec, fit ? &*fit : nullptr, t);
    });

    ExperimentResult result;
    result.n_total = spec.deployment.n_total;
    result.n_anchors = spec.deployment.anchor_mode == AnchorMode::FixedLayout
                           ? static_cast<int>(fixed_anchor_layout(spec.deployment.region).size())
                           : spec.deployment.n_anchors;
    result.effective_range = spec.model.effective_range();
    std::uint64_t hop_messages = 0;
    for (const auto& t : trials) {
        result.records.insert(result.records.end(), t.records.begin(), t.records.end());
        hop_messages += t.hop_messages;
    }

    for (Algorithm alg : spec.algorithms) {
        AlgorithmAggregate agg;
        agg.alg = alg;
        double sum = 0.0, sum_sq = 0.0;
        for (const auto& rec : result.records) {
            if (rec.alg != alg) continue;
            if (rec.status == "ok") {
                ++agg.localized;
                sum += rec.error;
                sum_sq += rec.error * rec.error;
            } else if (rec.status == "low_confidence") {
                ++agg.low_confidence;
            } else {
                ++agg.failed;
            }
        }
        if (agg.localized > 0) {
            agg.mean_error = sum / agg.localized;
            agg.mean_error_norm = agg.mean_error / result.effective_range;
            if (agg.localized > 1)
                agg.stddev_error = std::sqrt(
                    std::max(0.0, (sum_sq - sum * sum / agg.localized) / (agg.localized - 1)));
        }
        // DV-hop floods twice (hop counts, then hop sizes); kHopLoc floods
        // once, plus degree collection and parameter broadcast when the
        // density had to be estimated.
        if (alg == Algorithm::DvHop) {
            agg.messages = 2 * hop_messages;
        } else {
            agg.messages = hop_messages;
            if (spec.density_mode == DensityMode::Estimated)
                agg.messages += 2ULL * static_cast<std::uint64_t>(spec.deployment.n_total) *
                                static_cast<std::uint64_t>(spec.trials);
        }
        result.aggregates.push_back(agg);
    }
    return result;
}

std::vector<int> SweepRange::values() const {
    std::vector<int> out;
    if (step < 1) throw ParameterError("sweep: step must be >= 1");
    for (int v = from; v <= to; v += step) out.push_back(v);
    return out;
}

std::vector<ExperimentResult> sweep(const ExperimentSpec& spec, const SweepRange& range) {
    std::vector<ExperimentResult> results;
    const auto values = range.values();
    if (values.empty()) return results;

    ExperimentSpec base = spec;
    if (range.axis == SweepRange::Axis::Anchors) {
        if (spec.deployment.anchor_mode == AnchorMode::FixedLayout)
            throw ParameterError("sweep: anchor sweep requires random anchor placement");
        // Training does not depend on the anchor count; share one model.
        if (!base.pretrained && std::find(base.algorithms.begin(), base.algorithms.end(),
                                          Algorithm::KHopLoc) != base.algorithms.end())
            base.pretrained = std::make_shared<FitModel>(prepare_fit_model(base));
    }
    for (int v : values) {
        ExperimentSpec run = base;
        if (range.axis == SweepRange::Axis::Nodes)
            run.deployment.n_total = v;
        else
            run.deployment.n_anchors = v;
        results.push_back(run_experiment(run));
    }
    return results;
}

void write_csv(std::ostream& out, const ExperimentResult& result, bool header) {
    if (header)
        out << "trial,node_id,alg,true_x,true_y,est_x,est_y,error,n_anchors_used,degree,"
               "converged,error_norm,status,n_total,n_anchors,stddev_error,messages,"
               "low_confidence\n";
    for (const auto& rec : result.records) {
        out << rec.trial << ',' << rec.node_id << ',' << algorithm_name(rec.alg) << ','
            << fmt(rec.truth.x) << ',' << fmt(rec.truth.y) << ',';
        if (rec.estimate)
            out << fmt(rec.estimate->x) << ',' << fmt(rec.estimate->y) << ',' << fmt(rec.error)
                << ',';
        else
            out << ",,,";
        out << rec.anchors_used << ',' << rec.degree << ',' << (rec.converged ? 1 : 0) << ',';
        if (rec.estimate)
            out << fmt(rec.error_norm);
        out << ',' << rec.status << ',' << result.n_total << ',' << result.n_anchors << ",,,\n";
    }
    for (const auto& agg : result.aggregates) {
        out << "ALL,ALL," << algorithm_name(agg.alg) << ",,,,,";
        if (agg.localized > 0)
            out << fmt(agg.mean_error);
        out << ",,,," ;
        if (agg.localized > 0)
            out << fmt(agg.mean_error_norm);
        out << ",aggregate," << result.n_total << ',' << result.n_anchors << ',';
        if (agg.localized > 1)
            out << fmt(agg.stddev_error);
        out << ',' << agg.messages << ',' << agg.low_confidence << '\n';
    }
}

void write_csv(std::ostream& out, const std::vector<ExperimentResult>& results) {
    bool header = true;
    for (const auto& r : results) {
        write_csv(out, r, header);
        header = false;
    }
}

std::string to_csv(const ExperimentResult& result) {
    std::ostringstream out;
    write_csv(out, result);
    return out.str();
}

void save_csv(const std::string& path, const std::vector<ExperimentResult>& results) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    write_csv(out, results);
    if (!out) throw ConfigError("write to '" + path + "' failed");
}

} // namespace khoploc
