#pragma once

#include <functional>
#include <string>
#include <vector>

#include "loggas/ensemble.hpp"

namespace loggas {

/// One size of the finite-size exponent sweep.
struct LdpProbePoint {
    int n = 0;
    double event_probability = 0.0;
    double exponent = 0.0;  // -(1/n^2) log Q_n(A); +inf when the event has no mass
    bool below_bound_line = false;  // exponent < constrained_rate/2 (flagged, not failed)
};

/// Finite-size exponents of a half-space event {(1/p) sum g(x_i) >= t}
/// against the constrained rate-functional minimum from the solver.
struct LdpProbeReport {
    double constrained_rate = 0.0;  // inf over the event of the rate function
    double bound_line = 0.0;        // constrained_rate / 2
    std::vector<LdpProbePoint> points;  // n = 1 .. n_max
    bool monotone_toward_limit = false;  // |exponent - constrained_rate| nonincreasing
    std::vector<std::string> flags;      // finite-size observations, never failures
};

/// Runs the quadrature oracle for n = 1..n_max and assembles the report.
/// constrained_rate is the caller's solver value (constrained minus
/// unconstrained energy minimum). Throws NumericalError when a nonzero event
/// probability sits below the oracle's relative error floor.
LdpProbeReport ldp_probe(const EnsembleSpec& spec, const std::function<double(double)>& g,
                         double t, int n_max, double constrained_rate, int resolution = 256);

}  // namespace loggas
