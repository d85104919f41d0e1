#pragma once

#include <vector>

namespace loggas {

/// Limiting spectral density of the disordered-boson ensemble on (0, b],
/// b = 3*sqrt(3):
///   rho_inf(t) = (1/2pi) (t/b)^{-1/3} [ (1+sqrt(1-t^2/b^2))^{1/3}
///                                      - (1-sqrt(1-t^2/b^2))^{1/3} ].
double rho_infinity(double t);

/// Upper support endpoint b = 3*sqrt(3).
double rho_infinity_edge();

/// Semicircle density (1/2pi) sqrt(4 - x^2) on [-2, 2].
double semicircle(double x);

/// Integral of f against a density on [a, b] by graded Gauss-Legendre panels.
double density_moment(double (*density)(double), double a, double b, int power);

/// Discretizes a density into (atom, mass) pairs at m cell midpoints on [a, b]
/// (masses normalized to sum 1). Used as the reference side of W1 comparisons.
struct AtomList {
    std::vector<double> atoms;
    std::vector<double> masses;
};

AtomList discretize_density(double (*density)(double), double a, double b, int m);

}  // namespace loggas
