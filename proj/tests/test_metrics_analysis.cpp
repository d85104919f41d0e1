#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "loggas/ensemble.hpp"
#include "loggas/errors.hpp"
#include "loggas/ldp.hpp"
#include "loggas/metrics.hpp"
#include "loggas/oracle.hpp"
#include "loggas/rng.hpp"

using namespace loggas;

namespace {

EnsembleSpec flat_unit(int theta) {
    return EnsembleSpec::make(theta, 1.0, JacobiPower{0.0, 0.0}, Interval{0.0, 1.0});
}

DiscreteMeasure random_measure(Rng& rng, int atoms) {
    std::vector<double> xs(atoms), ms(atoms);
    double total = 0.0;
    for (int i = 0; i < atoms; ++i) {
        xs[i] = rng.uniform(-2.0, 2.0);
        ms[i] = rng.uniform(0.1, 1.0);
        total += ms[i];
    }
    for (double& m : ms) m /= total;
    return DiscreteMeasure::from_atoms(xs, ms);
}

// brute-force W1 between two equal-mass triples: minimum over all 3! matchings
double w1_triple_bruteforce(const std::vector<double>& x, std::vector<double> y) {
    std::sort(y.begin(), y.end());
    double best = 1e300;
    do {
        double cost = 0.0;
        for (int i = 0; i < 3; ++i) cost += std::abs(x[i] - y[i]) / 3.0;
        best = std::min(best, cost);
    } while (std::next_permutation(y.begin(), y.end()));
    return best;
}

}  // namespace

TEST_CASE("wasserstein distance on explicit pairs") {
    const DiscreteMeasure d0 = DiscreteMeasure::from_points({0.0});
    const DiscreteMeasure d1 = DiscreteMeasure::from_points({1.0});
    CHECK(wasserstein1(MeasurePair(d0, d0)) == 0.0);
    CHECK(wasserstein1(MeasurePair(d0, d1)) == doctest::Approx(1.0));

    // shifted equal-mass triples: 1/6 + 0 + 1/6 over 3 atoms
    const DiscreteMeasure a = DiscreteMeasure::from_points({0.0, 0.5, 1.0});
    const DiscreteMeasure b =
        DiscreteMeasure::from_points({1.0 / 6.0, 3.0 / 6.0, 5.0 / 6.0});
    CHECK(wasserstein1(MeasurePair(a, b)) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));

    // equal-mass case agrees with the assignment-problem brute force
    Rng rng(19);
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<double> x(3), y(3);
        for (double& v : x) v = rng.uniform(-1.0, 1.0);
        for (double& v : y) v = rng.uniform(-1.0, 1.0);
        std::sort(x.begin(), x.end());
        const double got = wasserstein1(
            MeasurePair(DiscreteMeasure::from_points(x), DiscreteMeasure::from_points(y)));
        CHECK(got == doctest::Approx(w1_triple_bruteforce(x, y)).epsilon(1e-12));
    }
}

TEST_CASE("wasserstein metric axioms on random triples") {
    Rng rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        const DiscreteMeasure a = random_measure(rng, 6);
        const DiscreteMeasure b = random_measure(rng, 9);
        const DiscreteMeasure c = random_measure(rng, 4);
        const double ab = wasserstein1(MeasurePair(a, b));
        const double ba = wasserstein1(MeasurePair(b, a));
        const double ac = wasserstein1(MeasurePair(a, c));
        const double cb = wasserstein1(MeasurePair(c, b));
        CHECK(ab == doctest::Approx(ba).epsilon(1e-13));
        CHECK(ab <= ac + cb + 1e-12);
        CHECK(wasserstein1(MeasurePair(a, a)) == 0.0);
        CHECK(ab >= 0.0);
    }
}

TEST_CASE("kolmogorov-smirnov distance") {
    const DiscreteMeasure d0 = DiscreteMeasure::from_points({0.0});
    const DiscreteMeasure d1 = DiscreteMeasure::from_points({1.0});
    CHECK(ks_distance(MeasurePair(d0, d1)) == doctest::Approx(1.0));
    CHECK(ks_distance(MeasurePair(d0, d0)) == 0.0);
    // interleaved atoms: CDFs differ by 1/2 everywhere between events
    const DiscreteMeasure two = DiscreteMeasure::from_points({0.0, 2.0});
    const DiscreteMeasure one = DiscreteMeasure::from_points({1.0});
    CHECK(ks_distance(MeasurePair(two, one)) == doctest::Approx(0.5));
    // KS <= 1 always, and KS bounds nothing below W1 in general
    Rng rng(29);
    for (int rep = 0; rep < 20; ++rep) {
        const MeasurePair p(random_measure(rng, 5), random_measure(rng, 7));
        const double ks = ks_distance(p);
        CHECK(ks >= 0.0);
        CHECK(ks <= 1.0);
    }
}

TEST_CASE("measure construction contracts") {
    CHECK_THROWS_AS(DiscreteMeasure::from_atoms({0.0}, {-1.0}), ContractError);
    CHECK_THROWS_AS(DiscreteMeasure::from_atoms({0.0, 1.0}, {0.5}), ContractError);
    CHECK_THROWS_AS(DiscreteMeasure::from_atoms({}, {}), ContractError);
    // unnormalized measures are rejected at pairing time
    const DiscreteMeasure half = DiscreteMeasure::from_atoms({0.0}, {0.5});
    const DiscreteMeasure full = DiscreteMeasure::from_points({0.0});
    CHECK_THROWS_AS(MeasurePair(half, full), ContractError);
    // duplicate atoms coalesce
    const DiscreteMeasure dup = DiscreteMeasure::from_atoms({1.0, 1.0}, {0.5, 0.5});
    CHECK(dup.atoms.size() == 1);
    CHECK(dup.masses[0] == doctest::Approx(1.0));
    CHECK(dup.mean() == doctest::Approx(1.0));
}

TEST_CASE("bounded-lipschitz sandwich") {
    const DiscreteMeasure d0 = DiscreteMeasure::from_points({0.0});
    CHECK(bounded_lipschitz(MeasurePair(d0, d0), 16).lower == 0.0);
    CHECK(bounded_lipschitz(MeasurePair(d0, d0), 16).upper == 0.0);

    const DiscreteMeasure d1 = DiscreteMeasure::from_points({1.0});
    const BoundedLipschitzEstimate far = bounded_lipschitz(MeasurePair(d0, d1), 64);
    CHECK(far.lower > 0.1);  // clearly separated measures are detected
    CHECK(far.lower <= far.upper + 1e-12);
    CHECK(far.upper == doctest::Approx(1.0));  // min(1, W1) with W1 = 1

    Rng rng(31);
    for (int rep = 0; rep < 30; ++rep) {
        const MeasurePair p(random_measure(rng, 8), random_measure(rng, 8));
        const BoundedLipschitzEstimate est = bounded_lipschitz(p, 32);
        CHECK(est.lower >= 0.0);
        CHECK(est.lower <= est.upper + 1e-12);
        CHECK(est.upper <= 1.0);
        CHECK(est.upper <= wasserstein1(p) + 1e-12);
    }
    CHECK_THROWS_AS(bounded_lipschitz(MeasurePair(d0, d1), 0), ContractError);
}

TEST_CASE("quadrature oracle against closed-form partition functions") {
    // single Gaussian particle: Z = integral exp(-x^2) = sqrt(pi)
    const EnsembleSpec gauss = EnsembleSpec::make(1, 1.0, GaussPower{0.0});
    const OracleResult z1 = quadrature_oracle(gauss, 1, 256);
    CHECK(z1.particle_count == 1);
    CHECK(z1.z == doctest::Approx(std::sqrt(3.14159265358979323846)).epsilon(1e-9));
    CHECK(z1.log_z == doctest::Approx(std::log(z1.z)));
    CHECK(z1.error_estimate <= 0.01 * z1.z);

    // two flat particles, theta = 1: Z = int int (x-y)^2 = 1/6
    const OracleResult f1 = quadrature_oracle(flat_unit(1), 2, 256);
    CHECK(f1.z == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    // theta = 2: int int |x-y| |x^2-y^2| = 1/6 as well
    const OracleResult f2 = quadrature_oracle(flat_unit(2), 2, 256);
    CHECK(f2.z == doctest::Approx(1.0 / 6.0).epsilon(1e-10));

    // resolution stability
    const OracleResult f1c = quadrature_oracle(flat_unit(1), 2, 128);
    CHECK(f1c.z == doctest::Approx(f1.z).epsilon(1e-10));
}

TEST_CASE("oracle marginal cdf and events") {
    // single flat particle: marginal law is uniform on [0, 1]
    const OracleResult res = quadrature_oracle(
        flat_unit(1), 1, 256,
        {OracleEvent{[](double x) { return x; }, 0.5},
         OracleEvent{[](double x) { return x; }, -1.0},
         OracleEvent{[](double x) { return x; }, 2.0}});
    CHECK(res.cdf_at(0.37) == doctest::Approx(0.37).epsilon(0.01));
    CHECK(res.cdf_at(-1.0) == 0.0);
    CHECK(res.cdf_at(5.0) == 1.0);
    for (std::size_t i = 1; i < res.cdf_values.size(); ++i)
        CHECK(res.cdf_values[i] >= res.cdf_values[i - 1]);
    CHECK(res.cdf_values.back() == doctest::Approx(1.0));

    REQUIRE(res.event_probabilities.size() == 3);
    CHECK(res.event_probabilities[0] == doctest::Approx(0.5).epsilon(0.02));
    CHECK(res.event_probabilities[1] == doctest::Approx(1.0));
    CHECK(res.event_probabilities[2] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("oracle preconditions") {
    CHECK_THROWS_AS(quadrature_oracle(flat_unit(1), 4, 256), ConfigError);  // p = 4 > 3
    CHECK_THROWS_AS(quadrature_oracle(flat_unit(1), 2, 16), ConfigError);   // resolution < 32
}

TEST_CASE("ldp probe on an inactive event") {
    // threshold far below the typical mean: probabilities near 1, exponents near 0
    const LdpProbeReport rep =
        ldp_probe(flat_unit(1), [](double x) { return x; }, 0.05, 3, 0.0, 128);
    CHECK(rep.bound_line == 0.0);
    REQUIRE(rep.points.size() == 3);
    for (const auto& pt : rep.points) {
        CHECK(pt.event_probability > 0.8);
        CHECK(pt.exponent >= 0.0);
        CHECK(pt.exponent < 0.3);
        CHECK_FALSE(pt.below_bound_line);
    }
    CHECK(rep.points[2].exponent < rep.points[0].exponent);
}

TEST_CASE("ldp probe flags zero-mass events instead of failing") {
    const LdpProbeReport rep =
        ldp_probe(flat_unit(1), [](double x) { return x; }, 2.0, 2, 1.0, 128);
    CHECK(rep.constrained_rate == 1.0);
    CHECK(rep.bound_line == 0.5);
    for (const auto& pt : rep.points) {
        CHECK(pt.event_probability == 0.0);
        CHECK(std::isinf(pt.exponent));
    }
    CHECK_FALSE(rep.flags.empty());
}
