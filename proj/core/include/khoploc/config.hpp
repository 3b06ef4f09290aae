#pragma once

#include <iosfwd>
#include <string>

#include "khoploc/harness.hpp"

namespace khoploc {

/// Everything a CLI invocation needs: the experiment spec plus the sweep
/// range for the `sweep` subcommand.
struct Config {
    ExperimentSpec spec;
    SweepRange sweep{SweepRange::Axis::Nodes, 200, 700, 100};
};

/// Flat key = value text; '#' starts a comment. Unknown keys are errors.
Config parse_config(std::istream& in);
Config parse_config_text(const std::string& text);
Config load_config(const std::string& path);

/// Applies one "key = value" override (same keys as the config file).
void apply_config_entry(Config& config, const std::string& key, const std::string& value);

/// Canonical config listing every key with its default value.
std::string default_config_text();

} // namespace khoploc
