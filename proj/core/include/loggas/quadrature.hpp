#pragma once

#include <functional>
#include <vector>

namespace loggas {

/// Gauss-Legendre rule on [-1, 1]. Nodes ascending, weights positive.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Computes the order-n rule by Newton iteration on the Legendre polynomial.
const GaussLegendreRule& gauss_legendre(int order);

/// Integral of f over [a, b] with a single order-`order` rule.
double integrate_panel(const std::function<double(double)>& f, double a, double b, int order);

/// Composite integral over [a, b] with `panels` equal panels.
double integrate(const std::function<double(double)>& f, double a, double b, int panels,
                 int order = 16);

/// Composite integral with panels graded geometrically toward both endpoints,
/// for integrands with (integrable) endpoint singularities.
double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        int panels_per_side = 40, int order = 16, double grading = 0.5);

}  // namespace loggas
