#include "loggas/reference_laws.hpp"

#include <cmath>

#include "loggas/quadrature.hpp"

namespace loggas {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double rho_infinity_edge() { return 3.0 * std::sqrt(3.0); }

double rho_infinity(double t) {
    const double b = rho_infinity_edge();
    if (t <= 0.0 || t > b) return 0.0;
    const double u = t / b;
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    return (std::cbrt(1.0 + s) - std::cbrt(1.0 - s)) / (2.0 * kPi * std::cbrt(u));
}

double semicircle(double x) {
    if (x <= -2.0 || x >= 2.0) return 0.0;
    return std::sqrt(4.0 - x * x) / (2.0 * kPi);
}

double density_moment(double (*density)(double), double a, double b, int power) {
    return integrate_graded([=](double x) { return std::pow(x, power) * density(x); }, a, b);
}

AtomList discretize_density(double (*density)(double), double a, double b, int m) {
    AtomList out;
    out.atoms.resize(m);
    out.masses.resize(m);
    const double dx = (b - a) / m;
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        out.atoms[i] = a + (i + 0.5) * dx;
        // cell mass by a short panel rule so that endpoint singularities
        // (rho_inf at 0, semicircle edge) are integrated, not sampled
        out.masses[i] = integrate_graded(
            [&](double x) { return density(x); }, a + i * dx, a + (i + 1) * dx, 8, 8);
        total += out.masses[i];
    }
    for (double& w : out.masses) w /= total;
    return out;
}

}  // namespace loggas
