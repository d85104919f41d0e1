#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "loggas/weight.hpp"

namespace loggas {

/// One-species biorthogonal ensemble: interaction |x_i - x_j| |x_i^theta - x_j^theta|,
/// per-particle weight factor exp(log w). For theta even the support lies in
/// [0, inf); for theta odd it may be any closed subset of R.
struct EnsembleSpec {
    int theta = 1;        // positive integer
    double kappa = 1.0;   // limit of p(n)/n, > 0
    Interval support;     // defaults to the weight's domain (clipped for even theta)
    WeightFamily weight = PowerExp{};

    /// Particle count at size n; default round(kappa * n).
    int particles(int n) const;

    /// Throws ConfigError on an inadmissible spec (parity/support mismatch,
    /// bad weight parameters, infinitely many weight zeros are excluded by
    /// construction of WeightFamily).
    void validate() const;

    static EnsembleSpec make(int theta, double kappa, WeightFamily w);
    static EnsembleSpec make(int theta, double kappa, WeightFamily w, Interval support);
};

/// Multi-species Angelesco ensemble: squared Vandermonde within each species,
/// linear cross interaction, varying weights w_i = exp(-n V_i) on pairwise
/// disjoint intervals.
struct AngelescoSpec {
    struct Species {
        Interval interval;       // Gamma_j, bounded, pairwise disjoint
        double ratio = 0.0;      // r_j in (0,1), ratios sum to 1
        WeightFamily potential;  // V_j(x) = -log w(x) of this family
    };
    std::vector<Species> species;

    int species_count() const { return static_cast<int>(species.size()); }

    /// Block sizes (n_1..n_p) at total size n: largest-remainder rounding of
    /// r_j * n, so they sum to n exactly.
    std::vector<int> block_sizes(int n) const;

    void validate() const;
};

/// External field V_j(x) = -log w(x) of the given family; +inf outside the
/// family domain or at weight zeros.
double potential_value(const WeightFamily& w, double x);

/// Per-particle log-weight factor as it enters the joint density. For the
/// scaled families the n-th power of the finite-n weight collapses exactly to
/// the limiting weight, so this is log w(x) independent of n.
/// Throws std::domain_error when x lies outside the support.
double log_weight(const EnsembleSpec& spec, double x, int n);

/// Unnormalized log joint density of the biorthogonal ensemble at size n:
///   sum_i log w(x_i) + sum_{i<j} [ log|x_i-x_j| + log|x_i^theta - x_j^theta| ].
/// Returns -inf on coordinate coincidence, vanishing weight, or coordinates
/// outside the support (soft, so MCMC proposals can be rejected).
/// Throws ContractError when x.size() != particles(n).
double log_joint_density_unnormalized(const EnsembleSpec& spec, std::span<const double> x, int n);

/// Unnormalized log joint density of the Angelesco ensemble:
///   sum_i 2 log|Delta(X_i)| + sum_{i<j} log|Delta(X_i, X_j)| - n sum_i sum_k V_i(x_k).
/// Returns -inf when a block leaves its interval or coordinates coincide.
/// Throws ContractError on block-size mismatch with block_sizes(n).
double log_joint_density_angelesco(const AngelescoSpec& spec,
                                   const std::vector<std::vector<double>>& blocks, int n);

/// log|x^theta - y^theta| via the exact factorization
/// log|x-y| + log|sum_{k<theta} x^k y^{theta-1-k}|; -inf iff x^theta = y^theta.
double log_theta_difference(double x, double y, int theta);

/// Diagnostic check of the tail assumption (a2): |x|^{(theta+1)(kappa+eps)} w(x)
/// sampled on a geometric grid out to probe_radius.
struct TailReport {
    bool satisfied = false;
    bool trivially = false;  // bounded support
    std::vector<double> abscissae;
    std::vector<double> values;  // log scale
    std::string message;
};

TailReport check_tail_assumption(const EnsembleSpec& spec, double epsilon, double probe_radius);

}  // namespace loggas
