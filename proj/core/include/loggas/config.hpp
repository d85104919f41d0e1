#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loggas/ensemble.hpp"
#include "loggas/mcmc.hpp"

namespace loggas {

/// One experiment = one structured config file. Exactly one of `biorthogonal`
/// / `angelesco` is set. Parsed from JSON (see schema_version).
struct ExperimentConfig {
    int schema_version = 1;

    std::optional<EnsembleSpec> biorthogonal;
    std::optional<AngelescoSpec> angelesco;

    ChainConfig sampler;
    int chains = 1;

    // equilibrium section
    int grid_size = 400;
    std::optional<Interval> truncation;  // absent -> suggest_truncation
    double tolerance = 1e-8;

    // verify section
    std::string reference = "rho-infinity";  // rho-infinity | semicircle | oracle
    std::string metric = "w1";               // w1 | bl
    double threshold = 0.05;

    // boson-matrix section
    int boson_n = 32;
    int boson_alpha = 0;
    int boson_draws = 200;
    double boson_frequency_scale = 0.0;  // 0 -> library default

    // oracle section
    int oracle_n = 2;
    int oracle_resolution = 256;

    std::string output_dir = "out";
    std::uint64_t seed = 1;

    /// Throws ConfigError with a field-level message on violation.
    void validate() const;
};

/// JSON (de)serialization; parse rejects unknown schema versions and malformed
/// sections with field-level ConfigError messages. serialize(parse(s)) is a
/// fixed point.
ExperimentConfig parse_config(const std::string& json_text);
std::string serialize_config(const ExperimentConfig& cfg);

ExperimentConfig load_config_file(const std::string& path);

/// Applies a `--set key=value` override with dotted keys
/// (e.g. "sampler.sweeps=5000", "ensemble.theta=2").
void apply_override(ExperimentConfig& cfg, const std::string& key_equals_value);

/// FNV-1a hash of the canonical serialized form.
std::string config_hash(const ExperimentConfig& cfg);

/// Written last by every CLI run; files listed must exist at write time.
struct RunManifest {
    std::string config_hash;
    std::string tool_version;
    std::string started_at;   // ISO-8601 UTC
    std::string finished_at;
    std::map<std::string, std::vector<std::string>> stage_outputs;
    std::map<std::string, double> headline_metrics;
};

std::string serialize_manifest(const RunManifest& m);

/// Writes the manifest after checking that every listed file exists
/// (ContractError otherwise).
void write_manifest(const RunManifest& m, const std::string& path);

}  // namespace loggas
