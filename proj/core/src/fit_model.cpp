#include "khoploc/fit_model.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "khoploc/errors.hpp"

namespace khoploc {

namespace {

// %.17g round-trips every double exactly through strtod.
std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double parse_double(const std::string& tok) {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw ConfigError("fit model: bad number '" + tok + "'");
    return v;
}

std::string next_content_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') return line;
    }
    throw ConfigError("fit model: unexpected end of file");
}

std::vector<double> parse_poly_line(std::istream& in, const std::string& key, int degree) {
    const auto toks = split_ws(next_content_line(in));
    if (toks.empty() || toks[0] != key)
        throw ConfigError("fit model: expected '" + key + "' line");
    if (static_cast<int>(toks.size()) != degree + 2)
        throw ConfigError("fit model: '" + key + "' needs degree+1 coefficients");
    std::vector<double> coeffs;
    for (std::size_t i = 1; i < toks.size(); ++i) coeffs.push_back(parse_double(toks[i]));
    return coeffs;
}

} // namespace

double eval_polynomial(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

FitModel::FitModel(FitModelInfo info, std::vector<double> poly_weight, std::vector<double> poly_peak,
                   std::vector<double> poly_log_scale, std::vector<PerHopFit> per_hop)
    : info_(info),
      poly_weight_(std::move(poly_weight)),
      poly_peak_(std::move(poly_peak)),
      poly_log_scale_(std::move(poly_log_scale)),
      per_hop_(std::move(per_hop)) {
    const auto want = static_cast<std::size_t>(info_.degree) + 1;
    if (poly_weight_.size() != want || poly_peak_.size() != want || poly_log_scale_.size() != want)
        throw ParameterError("FitModel: coefficient vectors must have degree+1 entries");
    if (info_.max_hop < 1) throw ParameterError("FitModel: max_hop must be >= 1");
}

void FitModel::check_hop(int hop) const {
    if (hop < 1 || hop > info_.max_hop)
        throw ParameterError("FitModel: hop count outside fitted range [1, K]");
}

double FitModel::weight(int hop) const {
    check_hop(hop);
    const double r0 = effective_range();
    const double floor = 1e-6 / (r0 * r0);
    const double v = eval_polynomial(poly_weight_, static_cast<double>(hop));
    return v < floor ? floor : v;
}

double FitModel::peak_distance(int hop) const {
    check_hop(hop);
    const double v = eval_polynomial(poly_peak_, static_cast<double>(hop));
    return v < 0.0 ? 0.0 : v;
}

double FitModel::log_scale(int hop) const {
    check_hop(hop);
    return eval_polynomial(poly_log_scale_, static_cast<double>(hop));
}

void FitModel::serialize(std::ostream& out) const {
    out << "khoploc-fit 1\n";
    if (info_.model.kind() == ConnectionModel::Kind::Rayleigh)
        out << "model rayleigh " << fmt_double(info_.model.beta()) << ' '
            << fmt_double(info_.model.eta()) << '\n';
    else
        out << "model qudg " << fmt_double(info_.model.d_max()) << ' '
            << fmt_double(info_.model.doi()) << '\n';
    if (!info_.region) {
        out << "region none\n";
    } else if (info_.region->kind() == Region::Kind::Square) {
        out << "region square " << fmt_double(info_.region->side()) << '\n';
    } else {
        out << "region cshape " << fmt_double(info_.region->side()) << ' '
            << fmt_double(info_.region->arm_width()) << '\n';
    }
    out << "density " << fmt_double(info_.density) << '\n';
    out << "max_hop " << info_.max_hop << '\n';
    out << "degree " << info_.degree << '\n';
    out << "iterations " << info_.iterations << '\n';
    out << "seed " << info_.seed << '\n';
    const auto poly_line = [&](const char* key, const std::vector<double>& coeffs) {
        out << key;
        for (double c : coeffs) out << ' ' << fmt_double(c);
        out << '\n';
    };
    poly_line("poly_weight", poly_weight_);
    poly_line("poly_peak", poly_peak_);
    poly_line("poly_log_scale", poly_log_scale_);
    out << "perhop " << per_hop_.size() << '\n';
    for (const auto& p : per_hop_)
        out << p.hop << ' ' << fmt_double(p.fit.weight) << ' ' << fmt_double(p.fit.peak) << ' '
            << fmt_double(p.fit.log_scale) << '\n';
    out << "end\n";
}

std::string FitModel::serialize() const {
    std::ostringstream out;
    serialize(out);
    return out.str();
}

FitModel FitModel::parse(std::istream& in) {
    {
        const auto toks = split_ws(next_content_line(in));
        if (toks.size() != 2 || toks[0] != "khoploc-fit")
            throw ConfigError("fit model: missing 'khoploc-fit' header");
        if (toks[1] != "1") throw ConfigError("fit model: unsupported version " + toks[1]);
    }
    FitModelInfo info;
    {
        const auto toks = split_ws(next_content_line(in));
        if (toks.size() != 4 || toks[0] != "model")
            throw ConfigError("fit model: expected 'model <kind> <p1> <p2>'");
        if (toks[1] == "rayleigh")
            info.model = ConnectionModel::rayleigh(parse_double(toks[2]), parse_double(toks[3]));
        else if (toks[1] == "qudg")
            info.model = ConnectionModel::qudg(parse_double(toks[2]), parse_double(toks[3]));
        else
            throw ConfigError("fit model: unknown model kind " + toks[1]);
    }
    {
        const auto toks = split_ws(next_content_line(in));
        if (toks.empty() || toks[0] != "region")
            throw ConfigError("fit model: expected 'region' line");
        if (toks.size() == 2 && toks[1] == "none")
            info.region = std::nullopt;
        else if (toks.size() == 3 && toks[1] == "square")
            info.region = Region::square(parse_double(toks[2]));
        else if (toks.size() == 4 && toks[1] == "cshape")
            info.region = Region::cshape(parse_double(toks[2]), parse_double(toks[3]));
        else
            throw ConfigError("fit model: bad region line");
    }
    const auto scalar_line = [&](const char* key) {
        const auto toks = split_ws(next_content_line(in));
        if (toks.size() != 2 || toks[0] != key)
            throw ConfigError(std::string("fit model: expected '") + key + " <value>'");
        return toks[1];
    };
    info.density = parse_double(scalar_line("density"));
    info.max_hop = static_cast<int>(std::stol(scalar_line("max_hop")));
    info.degree = static_cast<int>(std::stol(scalar_line("degree")));
    info.iterations = static_cast<int>(std::stol(scalar_line("iterations")));
    info.seed = std::stoull(scalar_line("seed"));

    auto poly_weight = parse_poly_line(in, "poly_weight", info.degree);
    auto poly_peak = parse_poly_line(in, "poly_peak", info.degree);
    auto poly_log_scale = parse_poly_line(in, "poly_log_scale", info.degree);

    std::size_t count = 0;
    {
        const auto toks = split_ws(next_content_line(in));
        if (toks.size() != 2 || toks[0] != "perhop")
            throw ConfigError("fit model: expected 'perhop <count>'");
        count = std::stoull(toks[1]);
    }
    std::vector<PerHopFit> per_hop;
    per_hop.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto toks = split_ws(next_content_line(in));
        if (toks.size() != 4) throw ConfigError("fit model: bad per-hop line");
        PerHopFit p;
        p.hop = static_cast<int>(std::stol(toks[0]));
        p.fit.weight = parse_double(toks[1]);
        p.fit.peak = parse_double(toks[2]);
        p.fit.log_scale = parse_double(toks[3]);
        per_hop.push_back(p);
    }
    if (next_content_line(in) != "end") throw ConfigError("fit model: missing 'end'");
    return FitModel(info, std::move(poly_weight), std::move(poly_peak), std::move(poly_log_scale),
                    std::move(per_hop));
}

FitModel FitModel::parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

void FitModel::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("fit model: cannot open '" + path + "' for writing");
    serialize(out);
    if (!out) throw ConfigError("fit model: write to '" + path + "' failed");
}

FitModel FitModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("fit model: cannot open '" + path + "'");
    return parse(in);
}

} // namespace khoploc
