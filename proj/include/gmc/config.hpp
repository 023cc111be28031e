#pragma once

#include "gmc/experiments.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gmc {

// Whole-run configuration: a [global] section plus one section per
// experiment, each starting from default_config(name).
struct RunConfig {
    std::uint64_t seed = 20240601;
    int workers = 0;
    std::string out = "results";
    std::map<std::string, ExperimentConfig> experiments;

    static RunConfig defaults();
    const ExperimentConfig& experiment(const std::string& name) const;
};

// `overrides` are "section.key=value" strings applied on top of the text.
// Unknown sections or keys raise ConfigError naming all of them.
RunConfig parse_config(const std::string& ini_text, const std::vector<std::string>& overrides = {});
// Reads the file (ConfigError when missing); an empty path means defaults.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

// Full ini text with round-trip precision; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);
bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace gmc
