#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loggas/ensemble.hpp"
#include "loggas/metrics.hpp"

namespace loggas {

/// Metropolis-within-Gibbs chain parameters.
struct ChainConfig {
    int n = 16;             // ensemble size parameter (particle count = p(n))
    long sweeps = 2000;     // total sweeps including burn-in
    long burn_in = 400;     // < sweeps
    int thinning = 10;      // keep every thinning-th sweep after burn-in
    double step_size = 0.5; // per-coordinate uniform proposal half-width
    bool adapt = true;      // step-size adaptation during burn-in
    std::uint64_t seed = 1;

    void validate() const;
};

/// Kept eigenvalue configurations with chain diagnostics. Every stored
/// configuration has a finite log-density and respects the support.
struct SampleBatch {
    std::string ensemble_id;
    std::vector<std::vector<double>> configurations;
    double acceptance_rate = 0.0;  // post burn-in average
    std::vector<double> log_density_trace;
    double final_step_size = 0.0;
};

/// Empirical measure L_n: sorted atoms of equal mass.
struct EmpiricalMeasure {
    std::vector<double> atoms;
    double atom_mass = 0.0;

    DiscreteMeasure discrete() const;
};

/// Runs a single chain on the biorthogonal density. Single-coordinate
/// uniform-window Metropolis; proposals outside the support are rejected via
/// -inf log-density. Deterministic given (spec, cfg including seed).
SampleBatch run_chain(const EnsembleSpec& spec, const ChainConfig& cfg);

/// Angelesco variant: the state is the concatenation of the species blocks
/// in order, block sizes from spec.block_sizes(cfg.n).
SampleBatch run_chain(const AngelescoSpec& spec, const ChainConfig& cfg);

/// pool = true: atoms of all configurations, mass 1/(p * #configs);
/// pool = false: atoms of the last configuration, mass 1/p.
EmpiricalMeasure empirical_measure(const SampleBatch& batch, bool pool);

/// Empirical measure of one configuration (by index).
EmpiricalMeasure empirical_measure_single(const SampleBatch& batch, std::size_t config_index);

/// Per-species empirical measure of an Angelesco batch.
EmpiricalMeasure empirical_measure_species(const SampleBatch& batch, const AngelescoSpec& spec,
                                           int n, int species, bool pool);

/// Integrated autocorrelation time of a scalar series (initial positive
/// sequence estimator); a mixing diagnostic, not an asserted bound.
double integrated_autocorrelation(const std::vector<double>& series);

}  // namespace loggas
