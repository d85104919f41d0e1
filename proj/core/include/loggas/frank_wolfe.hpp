#pragma once

#include <vector>

#include "loggas/grid_measure.hpp"
#include "loggas/kernel.hpp"

namespace loggas {

/// Result of a rate-functional minimization. c_constant = -energy_value is
/// the limit of (1/n^2) log Z_n.
struct RateReport {
    GridMeasure minimizer;
    double energy_value = 0.0;
    double c_constant = 0.0;
    long iterations = 0;
    double final_duality_gap = 0.0;
};

/// Minimizes E(w) = (kappa^2/2) w'Kw + kappa U'w over the probability simplex
/// by Frank-Wolfe with away steps and exact line search. Nodes with U = +inf
/// are excluded from the simplex. Terminates when the duality gap
///   max_i [-grad]_i - (-grad)'w
/// drops to `tolerance`; throws NumericalError (carrying the gap) when
/// max_iter is reached first. max_iter <= 0 means the default 200*m.
RateReport minimize(const InteractionKernel& kernel, double kappa, double tolerance,
                    long max_iter = 0);

/// Same energy subject to the linear constraint g'w >= t. Frank-Wolfe with
/// away steps over the restricted polytope; the linear subproblem is solved
/// exactly over its vertices (single coordinates with g_i >= t and
/// two-coordinate points on the constraint face). Ties break toward the
/// lowest node index. Throws ConfigError when no grid vertex is feasible.
RateReport constrained_minimize(const InteractionKernel& kernel, double kappa,
                                const std::vector<double>& g, double t, double tolerance,
                                long max_iter = 0);

namespace detail {

/// Shared away-step Frank-Wolfe core over an arbitrary quadratic
/// (quad/2) w'Kw + lin'w restricted to the simplex on active coordinates.
RateReport minimize_quadratic_simplex(const std::vector<double>& K,
                                      const std::vector<double>& lin,
                                      const std::vector<double>& nodes, double delta, double quad,
                                      double tolerance, long max_iter);

}  // namespace detail

}  // namespace loggas
