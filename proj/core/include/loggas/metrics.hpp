#pragma once

#include <vector>

#include "loggas/grid_measure.hpp"

namespace loggas {

/// A probability measure reduced to sorted atoms with positive masses.
struct DiscreteMeasure {
    std::vector<double> atoms;
    std::vector<double> masses;

    static DiscreteMeasure from_atoms(std::vector<double> atoms, std::vector<double> masses);
    /// Equal-mass atoms.
    static DiscreteMeasure from_points(std::vector<double> points);
    static DiscreteMeasure from_grid(const GridMeasure& g);

    double mean() const;
};

/// Pair of measures to compare; both must be normalized within 1e-10.
struct MeasurePair {
    DiscreteMeasure first;
    DiscreteMeasure second;

    MeasurePair(DiscreteMeasure a, DiscreteMeasure b);
};

/// Exact W1 on the line: L1 distance between the CDFs (merge sweep).
double wasserstein1(const MeasurePair& pair);

/// Kolmogorov-Smirnov distance: sup-norm between the CDFs.
double ks_distance(const MeasurePair& pair);

/// Bounded-Lipschitz estimate: maximizes |int f dmu - int f dnu| over a
/// finite family of admissible test functions (clipped tents and tanh
/// profiles, each rescaled so Lipschitz constant + sup-norm = 1). The result
/// is a certified lower bound on d; the companion upper bound is
/// min(1, W1).
struct BoundedLipschitzEstimate {
    double lower = 0.0;
    double upper = 0.0;
};

BoundedLipschitzEstimate bounded_lipschitz(const MeasurePair& pair, int family_size);

}  // namespace loggas
