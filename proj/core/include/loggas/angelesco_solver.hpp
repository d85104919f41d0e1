#pragma once

#include <vector>

#include "loggas/ensemble.hpp"
#include "loggas/frank_wolfe.hpp"
#include "loggas/grid_measure.hpp"

namespace loggas {

/// Result of the multi-species rate-functional minimization (Angelesco).
struct AngelescoRateReport {
    std::vector<GridMeasure> minimizers;  // one per species
    double energy_value = 0.0;
    double c_constant = 0.0;
    int cycles = 0;
    double last_cycle_improvement = 0.0;
};

/// Total discrete Angelesco energy
///   sum_j r_j^2 I_self(mu_j) + sum_{j<k} r_j r_k I_cross(mu_j, mu_k)
///   + sum_j r_j integral V_j dmu_j
/// with I_self the cell-averaged -log|x-y| quadratic form (diagonal by the
/// exact cell self-average) and I_cross the plain -log|x-y| coupling.
double angelesco_energy(const AngelescoSpec& spec, const std::vector<GridMeasure>& mus);

/// Independent double-loop evaluation of the same energy, kept free of the
/// kernel/assembly code path so the two can be cross-checked.
double angelesco_energy_bruteforce(const AngelescoSpec& spec, const std::vector<GridMeasure>& mus);

/// Block-coordinate descent: cyclically minimizes over each mu_j (a
/// single-species simplex problem with the effective external field
/// V_j + sum_{k != j} r_k * integral -log|x-y| dmu_k) via Frank-Wolfe.
/// Stops when one full cycle improves the total energy by less than
/// `tolerance`. Grids must lie inside the (disjoint) species intervals.
AngelescoRateReport minimize_angelesco(const AngelescoSpec& spec,
                                       const std::vector<GridMeasure>& grids, double tolerance,
                                       int max_cycles = 200, double inner_tolerance = 0.0);

}  // namespace loggas
