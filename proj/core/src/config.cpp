#include "khoploc/config.hpp"

#include <fstream>
#include <sstream>

#include "khoploc/errors.hpp"

namespace khoploc {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad number for '" + key + "': " + value);
    }
}

long to_long(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer for '" + key + "': " + value);
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad unsigned integer for '" + key + "': " + value);
    }
}

// Region geometry and connection parameters are collected first and
// materialized at the end, so key order in the file does not matter.
struct RawGeometry {
    std::string region = "square";
    double side = 10.0;
    double arm_width = 2.0;
    std::string model = "rayleigh";
    double beta = 1.0;
    double eta = 2.0;
    double d_max = 1.0;
    double doi = 1.5;
};

struct Builder {
    Config config;
    RawGeometry raw;

    void apply(const std::string& key, const std::string& value);
    Config finish();
};

void Builder::apply(const std::string& key, const std::string& value) {
    auto& spec = config.spec;
    if (key == "region") {
        if (value != "square" && value != "cshape")
            throw ConfigError("config: region must be square or cshape");
        raw.region = value;
    } else if (key == "region_side") {
        raw.side = to_double(key, value);
    } else if (key == "region_arm_width") {
        raw.arm_width = to_double(key, value);
    } else if (key == "model") {
        if (value != "rayleigh" && value != "qudg")
            throw ConfigError("config: model must be rayleigh or qudg");
        raw.model = value;
    } else if (key == "beta") {
        raw.beta = to_double(key, value);
    } else if (key == "eta") {
        raw.eta = to_double(key, value);
    } else if (key == "d_max") {
        raw.d_max = to_double(key, value);
    } else if (key == "doi") {
        raw.doi = to_double(key, value);
    } else if (key == "n_total") {
        spec.deployment.n_total = static_cast<int>(to_long(key, value));
    } else if (key == "n_anchors") {
        spec.deployment.n_anchors = static_cast<int>(to_long(key, value));
    } else if (key == "anchor_mode") {
        if (value == "fixed")
            spec.deployment.anchor_mode = AnchorMode::FixedLayout;
        else if (value == "random")
            spec.deployment.anchor_mode = AnchorMode::Random;
        else
            throw ConfigError("config: anchor_mode must be fixed or random");
    } else if (key == "trials") {
        spec.trials = static_cast<int>(to_long(key, value));
    } else if (key == "algorithms") {
        spec.algorithms.clear();
        std::stringstream list(value);
        std::string name;
        while (std::getline(list, name, ',')) {
            name = trim(name);
            if (name == "khoploc")
                spec.algorithms.push_back(Algorithm::KHopLoc);
            else if (name == "dvhop")
                spec.algorithms.push_back(Algorithm::DvHop);
            else if (!name.empty())
                throw ConfigError("config: unknown algorithm '" + name + "'");
        }
        if (spec.algorithms.empty()) throw ConfigError("config: algorithms is empty");
    } else if (key == "density_mode") {
        if (value == "known")
            spec.density_mode = DensityMode::Known;
        else if (value == "estimated")
            spec.density_mode = DensityMode::Estimated;
        else
            throw ConfigError("config: density_mode must be known or estimated");
    } else if (key == "region_mode") {
        if (value == "known")
            spec.region_mode = RegionMode::Known;
        else if (value == "assume_square")
            spec.region_mode = RegionMode::AssumeSquare;
        else
            throw ConfigError("config: region_mode must be known or assume_square");
    } else if (key == "seed") {
        spec.seed = to_u64(key, value);
    } else if (key == "out") {
        spec.output_path = value;
    } else if (key == "threads") {
        spec.threads = static_cast<int>(to_long(key, value));
        if (spec.threads < 1) throw ConfigError("config: threads must be >= 1");
    } else if (key == "max_hop") {
        spec.training.max_hop = static_cast<int>(to_long(key, value));
    } else if (key == "train_iterations") {
        spec.training.iterations = static_cast<int>(to_long(key, value));
    } else if (key == "train_degree") {
        spec.training.degree = static_cast<int>(to_long(key, value));
    } else if (key == "train_max_distance") {
        spec.training.max_distance = to_double(key, value);
    } else if (key == "train_shells") {
        spec.training.shells = static_cast<int>(to_long(key, value));
    } else if (key == "fit_model") {
        spec.fit_model_path = value;
    } else if (key == "sweep_axis") {
        if (value == "nodes")
            config.sweep.axis = SweepRange::Axis::Nodes;
        else if (value == "anchors")
            config.sweep.axis = SweepRange::Axis::Anchors;
        else
            throw ConfigError("config: sweep_axis must be nodes or anchors");
    } else if (key == "sweep_from") {
        config.sweep.from = static_cast<int>(to_long(key, value));
    } else if (key == "sweep_to") {
        config.sweep.to = static_cast<int>(to_long(key, value));
    } else if (key == "sweep_step") {
        config.sweep.step = static_cast<int>(to_long(key, value));
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

Config Builder::finish() {
    Region region = raw.region == "square" ? Region::square(raw.side)
                                           : Region::cshape(raw.side, raw.arm_width);
    ConnectionModel model = raw.model == "rayleigh"
                                ? ConnectionModel::rayleigh(raw.beta, raw.eta)
                                : ConnectionModel::qudg(raw.d_max, raw.doi);
    config.spec.deployment.region = region;
    config.spec.model = model;
    return config;
}

} // namespace

Config parse_config(std::istream& in) {
    Builder builder;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config: empty key on line " + std::to_string(lineno));
        builder.apply(key, value);
    }
    return builder.finish();
}

Config parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(in);
}

void apply_config_entry(Config& config, const std::string& key, const std::string& value) {
    Builder builder;
    builder.config = config;
    // Rebuild raw geometry from the current spec so a single override keeps
    // the other parameters.
    const Region& region = config.spec.deployment.region;
    builder.raw.region = region.kind() == Region::Kind::Square ? "square" : "cshape";
    builder.raw.side = region.side();
    if (region.kind() == Region::Kind::CShape) builder.raw.arm_width = region.arm_width();
    const ConnectionModel& model = config.spec.model;
    if (model.kind() == ConnectionModel::Kind::Rayleigh) {
        builder.raw.model = "rayleigh";
        builder.raw.beta = model.beta();
        builder.raw.eta = model.eta();
    } else {
        builder.raw.model = "qudg";
        builder.raw.d_max = model.d_max();
        builder.raw.doi = model.doi();
    }
    builder.apply(key, value);
    config = builder.finish();
}

std::string default_config_text() {
    return
        "# khoploc experiment configuration (all values are the defaults)\n"
        "\n"
        "# Deployment\n"
        "region = square            # square | cshape\n"
        "region_side = 10\n"
        "region_arm_width = 2       # cshape only\n"
        "n_total = 300\n"
        "n_anchors = 13             # ignored when anchor_mode = fixed\n"
        "anchor_mode = fixed        # fixed | random\n"
        "\n"
        "# Connection model\n"
        "model = rayleigh           # rayleigh | qudg\n"
        "beta = 1                   # rayleigh\n"
        "eta = 2                    # rayleigh\n"
        "d_max = 1                  # qudg\n"
        "doi = 1.5                  # qudg\n"
        "\n"
        "# Experiment\n"
        "trials = 20\n"
        "algorithms = khoploc,dvhop\n"
        "density_mode = known       # known | estimated\n"
        "region_mode = known        # known | assume_square\n"
        "seed = 1\n"
        "threads = 1\n"
        "out =                      # CSV output path (empty: stdout)\n"
        "\n"
        "# Training\n"
        "max_hop = 20\n"
        "train_iterations = 100\n"
        "train_degree = 4\n"
        "train_max_distance = 0     # 0 = auto: 1.2 * max_hop * effective range\n"
        "train_shells = 0           # 0 = auto: 12 * max_hop\n"
        "fit_model =                # pretrained model path (empty: train)\n"
        "\n"
        "# Sweep\n"
        "sweep_axis = nodes         # nodes | anchors\n"
        "sweep_from = 200\n"
        "sweep_to = 700\n"
        "sweep_step = 100\n";
}

} // namespace khoploc
