#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "khoploc/connectivity.hpp"
#include "khoploc/fit_model.hpp"
#include "khoploc/geometry.hpp"
#include "khoploc/localization.hpp"
#include "khoploc/training.hpp"

namespace khoploc {

enum class Algorithm { KHopLoc, DvHop };

enum class DensityMode { Known, Estimated };

enum class RegionMode { Known, AssumeSquare };

const char* algorithm_name(Algorithm alg);

struct TrainingSettings {
    int iterations = 100;
    int degree = 4;
    int max_hop = 20;
    double max_distance = 0.0; // 0 = auto: 1.2 * max_hop * r_eff
    int shells = 0;            // 0 = auto: 12 * max_hop
};

struct ExperimentSpec {
    DeploymentConfig deployment{Region::square(10.0), 300, 13, AnchorMode::FixedLayout, 0};
    ConnectionModel model = ConnectionModel::rayleigh(1.0, 2.0);
    TrainingSettings training;
    std::string fit_model_path;                  // pretrained model file; empty = train
    std::shared_ptr<const FitModel> pretrained;  // in-memory model, overrides everything
    int trials = 20;
    std::vector<Algorithm> algorithms{Algorithm::KHopLoc, Algorithm::DvHop};
    DensityMode density_mode = DensityMode::Known;
    RegionMode region_mode = RegionMode::Known;
    std::string output_path;
    std::uint64_t seed = 1;
    int threads = 1;
};

struct NodeRecord {
    int trial = 0;
    int node_id = 0;
    Algorithm alg = Algorithm::KHopLoc;
    Point truth;
    std::optional<Point> estimate;
    double error = 0.0;       // Euclidean, region units
    double error_norm = 0.0;  // error / effective range
    int anchors_used = 0;
    int degree = 0;
    bool converged = false;
    std::string status;  // "ok", "low_confidence", or "failed:<reason>"
};

struct AlgorithmAggregate {
    Algorithm alg = Algorithm::KHopLoc;
    int localized = 0;       // rows with status "ok"
    int low_confidence = 0;
    int failed = 0;
    double mean_error = 0.0;
    double mean_error_norm = 0.0;
    double stddev_error = 0.0;
    std::uint64_t messages = 0;  // simulated flooding message total
};

struct ExperimentResult {
    int n_total = 0;
    int n_anchors = 0;
    double effective_range = 0.0;
    std::vector<NodeRecord> records;
    std::vector<AlgorithmAggregate> aggregates;

    const AlgorithmAggregate& aggregate(Algorithm alg) const;
};

/// Nodes for one trial; indices [0, n_anchors) are the anchors.
struct Deployment {
    std::vector<Point> nodes;
    int n_anchors = 0;
};

Deployment deploy_network(const DeploymentConfig& config);

/// Mean Euclidean distance between estimates and ground truth.
double mean_error(const std::vector<Point>& estimates, const std::vector<Point>& truths);

/// Density the training phase should assume, honoring the density mode. In
/// Estimated mode a calibration network is realized and the mean one-hop
/// degree is converted through the average communication area (region-aware
/// when the region is known).
double training_density(const ExperimentSpec& spec);

/// Loads or trains the hop-distance model for the spec, honoring region and
/// density modes.
FitModel prepare_fit_model(const ExperimentSpec& spec);

ExperimentResult run_experiment(const ExperimentSpec& spec);

struct SweepRange {
    enum class Axis { Nodes, Anchors };
    Axis axis = Axis::Nodes;
    int from = 0;
    int to = 0;
    int step = 1;

    std::vector<int> values() const;
};

/// One run_experiment per axis value with the shared base seed (common random
/// numbers across values).
std::vector<ExperimentResult> sweep(const ExperimentSpec& spec, const SweepRange& range);

/// Deterministic CSV emission; aggregate rows carry node_id "ALL".
void write_csv(std::ostream& out, const ExperimentResult& result, bool header = true);
void write_csv(std::ostream& out, const std::vector<ExperimentResult>& results);
std::string to_csv(const ExperimentResult& result);
void save_csv(const std::string& path, const std::vector<ExperimentResult>& results);

} // namespace khoploc
