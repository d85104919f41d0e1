#pragma once

#include <functional>
#include <vector>

#include "loggas/ensemble.hpp"

namespace loggas {

/// Event {(1/p) sum_i g(x_i) >= threshold} on the particle configuration.
struct OracleEvent {
    std::function<double(double)> g;
    double threshold = 0.0;
};

/// Brute-force tensor-product quadrature of the unnormalized joint density
/// at desk scale (at most 3 particles).
struct OracleResult {
    int n = 0;               // size parameter passed in
    int particle_count = 0;  // p(n)
    double z = 0.0;          // partition function of the truncated model
    double log_z = 0.0;
    Interval truncation;
    std::vector<double> cdf_abscissae;  // marginal CDF of one coordinate
    std::vector<double> cdf_values;     // nondecreasing, 0 -> 1
    std::vector<double> event_probabilities;  // in [0, 1], one per event
    double error_estimate = 0.0;  // |Z(res) - Z(res/2)|, Richardson style

    /// Marginal CDF evaluated by linear interpolation of the table.
    double cdf_at(double x) const;
};

/// Tensor-product Gauss-Legendre over the truncated support (truncation rule
/// shared with the equilibrium solver). `resolution` is the point count per
/// axis; the error estimate compares against resolution/2.
/// Throws ConfigError when p(n) > 3 or resolution < 32, NumericalError when
/// the error estimate exceeds 1% of Z.
OracleResult quadrature_oracle(const EnsembleSpec& spec, int n, int resolution = 256,
                               const std::vector<OracleEvent>& events = {});

}  // namespace loggas
