#pragma once

#include <vector>

#include "loggas/ensemble.hpp"
#include "loggas/grid_measure.hpp"

namespace loggas {

/// Discretized interaction kernel and external field of the rate functional:
///   K[i][j] = -( log|x_i - x_j| + log|x_i^theta - x_j^theta| )  (midpoints, i != j)
///   K[i][i] = cell self-average via the local linearization of x^theta - y^theta
///   U[i]    = -log w(node_i), +inf where the weight vanishes (excluded node).
/// kappa is applied at energy-assembly time.
struct InteractionKernel {
    std::vector<double> nodes;
    double delta = 0.0;
    std::vector<double> K;  // m*m row-major, symmetric, finite
    std::vector<double> U;  // +inf marks excluded nodes

    int size() const { return static_cast<int>(nodes.size()); }
    double k(int i, int j) const { return K[static_cast<std::size_t>(i) * nodes.size() + j]; }
};

/// Assembles the kernel on the m-cell uniform grid covering [a, b].
/// Throws ConfigError when the grid leaves the support.
InteractionKernel assemble_kernel(const EnsembleSpec& spec, double a, double b, int m);

/// Same geometry as an existing grid measure.
InteractionKernel assemble_kernel(const EnsembleSpec& spec, const GridMeasure& grid);

/// Energy E(mu) = (kappa^2/2) w'Kw + kappa U'w (the rate functional without c).
double energy(const InteractionKernel& kernel, const GridMeasure& mu, double kappa);

/// Truncation [a, b] of an unbounded support: chosen so the effective
/// potential kappa*U(x) - kappa^2*(theta+1)*log(1+|x|) rises at least 20
/// above its minimum at the boundary. Returns the support itself when bounded.
Interval suggest_truncation(const EnsembleSpec& spec);

}  // namespace loggas
