#include <doctest.h>

#include <cmath>

#include "loggas/errors.hpp"
#include "loggas/grid_measure.hpp"
#include "loggas/quadrature.hpp"
#include "loggas/reference_laws.hpp"

using namespace loggas;

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
    // order n is exact through degree 2n-1
    for (int order : {2, 4, 8, 16}) {
        const int deg = 2 * order - 1;
        const double got = integrate_panel([deg](double x) { return std::pow(x, deg) + 1.0; },
                                           -1.0, 1.0, order);
        CHECK(got == doctest::Approx(2.0).epsilon(1e-13));  // odd power integrates to 0
    }
    const auto& rule = gauss_legendre(16);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (std::size_t i = 1; i < rule.nodes.size(); ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
}

TEST_CASE("graded panels handle endpoint singularities") {
    // int_0^1 x^{-1/2} dx = 2
    const double got = integrate_graded([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(got == doctest::Approx(2.0).epsilon(1e-6));
    // smooth case agrees with plain composite quadrature
    const double a = integrate([](double x) { return std::exp(-x * x); }, -3.0, 3.0, 16);
    const double b = integrate_graded([](double x) { return std::exp(-x * x); }, -3.0, 3.0);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("rho_infinity normalization, edge and mean") {
    CHECK(rho_infinity_edge() == doctest::Approx(3.0 * std::sqrt(3.0)));
    const double norm =
        integrate_graded([](double t) { return rho_infinity(t); }, 1e-12, rho_infinity_edge());
    CHECK(std::abs(norm - 1.0) < 1e-6);
    // outside (0, b]: zero
    CHECK(rho_infinity(-0.5) == 0.0);
    CHECK(rho_infinity(6.0) == 0.0);
    // known first moment (used by the matrix-model calibration)
    const double mean =
        integrate_graded([](double t) { return t * rho_infinity(t); }, 1e-12, rho_infinity_edge());
    CHECK(mean == doctest::Approx(1.5).epsilon(1e-8));
}

TEST_CASE("semicircle normalization and variance") {
    const double norm = integrate_graded([](double x) { return semicircle(x); }, -2.0, 2.0);
    CHECK(std::abs(norm - 1.0) < 1e-10);
    const double var =
        integrate_graded([](double x) { return x * x * semicircle(x); }, -2.0, 2.0);
    CHECK(var == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(semicircle(0.0) == doctest::Approx(1.0 / 3.141592653589793));
    CHECK(semicircle(2.5) == 0.0);
}

TEST_CASE("discretize_density produces a normalized atom list") {
    const AtomList atoms = discretize_density(semicircle, -2.0, 2.0, 500);
    REQUIRE(atoms.atoms.size() == 500);
    double mass = 0.0;
    for (double m : atoms.masses) {
        CHECK(m >= 0.0);
        mass += m;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grid measure invariants") {
    GridMeasure g = GridMeasure::uniform(0.0, 1.0, 10);
    CHECK(g.size() == 10);
    CHECK(g.delta == doctest::Approx(0.1));
    CHECK(g.nodes.front() == doctest::Approx(0.05));
    CHECK(g.nodes.back() == doctest::Approx(0.95));
    CHECK_NOTHROW(g.check_invariants());

    GridMeasure bad = g;
    bad.weights[0] = -0.1;
    bad.weights[1] += 0.1;
    CHECK_THROWS_AS(bad.check_invariants(), ContractError);

    GridMeasure unnorm = g;
    unnorm.weights[0] += 0.5;
    CHECK_THROWS_AS(unnorm.check_invariants(), ContractError);
}
