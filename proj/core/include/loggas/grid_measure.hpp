#pragma once

#include <vector>

namespace loggas {

/// Discretized probability measure on a uniform grid: m strictly increasing
/// cell midpoints with common width delta, nonnegative weights summing to 1.
struct GridMeasure {
    std::vector<double> nodes;
    double delta = 0.0;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }

    /// Uniform grid of m cell midpoints covering [a, b], uniform weights.
    static GridMeasure uniform(double a, double b, int m);

    /// Throws ContractError on violated invariants (normalization within
    /// 1e-12, nonnegativity, uniform spacing).
    void check_invariants() const;
};

}  // namespace loggas
