#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "loggas/ensemble.hpp"
#include "loggas/errors.hpp"
#include "loggas/rng.hpp"
#include "loggas/weight.hpp"

using namespace loggas;

namespace {

EnsembleSpec boson_spec(double tau = 1.0) {
    return EnsembleSpec::make(2, 1.0, PowerExp{0.0, tau}, Interval{0.0, kPosInf});
}

EnsembleSpec flat_unit(int theta) {
    return EnsembleSpec::make(theta, 1.0, JacobiPower{0.0, 0.0}, Interval{0.0, 1.0});
}

}  // namespace

TEST_CASE("weight family values") {
    CHECK(log_weight_value(PowerExp{0.0, 1.0}, 1.0) == doctest::Approx(-1.0));
    CHECK(log_weight_value(PowerExp{2.0, 1.0}, 1.0) == doctest::Approx(-1.0));
    CHECK(log_weight_value(JacobiPower{1.0, 1.0}, 0.0) == kNegInf);
    CHECK(log_weight_value(JacobiPower{1.0, 1.0}, 1.0) == kNegInf);
    CHECK(log_weight_value(GaussPower{0.0}, 2.0) == doctest::Approx(-4.0));
    CHECK(log_weight_value(LogSquare{2.0}, std::exp(1.0)) == doctest::Approx(-2.0));
    // table interpolation is linear between nodes
    TablePotential tp{{0.0, 1.0}, {0.0, -2.0}};
    CHECK(log_weight_value(WeightFamily{tp}, 0.25) == doctest::Approx(-0.5));
    CHECK(log_weight_value(WeightFamily{tp}, 2.0) == kNegInf);
}

TEST_CASE("weight parameter validation") {
    CHECK_THROWS_AS(validate_weight(PowerExp{-1.5, 1.0}), ConfigError);
    CHECK_THROWS_AS(validate_weight(PowerExp{0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(validate_weight(GaussPower{-2.0}), ConfigError);
    CHECK_THROWS_AS(validate_weight(JacobiPower{0.0, -1.0}), ConfigError);
    CHECK_THROWS_AS(validate_weight(LogSquare{0.0}), ConfigError);
    CHECK_THROWS_AS(validate_weight(TablePotential{{1.0, 0.5}, {0.0, 0.0}}), ConfigError);
    CHECK_NOTHROW(validate_weight(PowerExp{0.0, 1.0}));
}

TEST_CASE("log_weight per-particle factor") {
    const EnsembleSpec spec = boson_spec();
    for (int n : {1, 5, 100}) CHECK(log_weight(spec, 1.0, n) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(log_weight(spec, -1.0, 2), std::domain_error);
}

TEST_CASE("ensemble admissibility") {
    // even theta requires support in [0, inf)
    EnsembleSpec bad;
    bad.theta = 2;
    bad.kappa = 1.0;
    bad.support = Interval{-1.0, 1.0};
    bad.weight = PowerExp{0.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    CHECK_THROWS_AS(EnsembleSpec::make(0, 1.0, PowerExp{}), ConfigError);
    CHECK_THROWS_AS(EnsembleSpec::make(1, 0.0, PowerExp{}), ConfigError);
    CHECK(boson_spec().particles(16) == 16);
    CHECK(EnsembleSpec::make(1, 0.5, GaussPower{}).particles(10) == 5);
}

TEST_CASE("joint density examples") {
    const EnsembleSpec unit = flat_unit(1);
    CHECK(log_joint_density_unnormalized(unit, std::vector<double>{0.25, 0.75}, 2) ==
          doctest::Approx(2.0 * std::log(0.5)));
    CHECK(log_joint_density_unnormalized(unit, std::vector<double>{0.5, 0.5}, 2) == kNegInf);
    // disordered-boson weight at (1, 2): interaction log|1-2| + log|1-4|, field -1 - 2
    const EnsembleSpec boson = boson_spec();
    CHECK(log_joint_density_unnormalized(boson, std::vector<double>{1.0, 2.0}, 2) ==
          doctest::Approx(std::log(3.0) - 3.0));
    // outside support: soft -inf
    CHECK(log_joint_density_unnormalized(unit, std::vector<double>{0.25, 1.5}, 2) == kNegInf);
    // shape mismatch: contract error
    CHECK_THROWS_AS(log_joint_density_unnormalized(unit, std::vector<double>{0.25}, 2),
                    ContractError);
}

TEST_CASE("joint density permutation symmetry") {
    const EnsembleSpec spec = boson_spec();
    Rng rng(7);
    std::vector<double> x(4);
    for (int rep = 0; rep < 20; ++rep) {
        for (double& xi : x) xi = rng.uniform(0.1, 5.0);
        const double base = log_joint_density_unnormalized(spec, x, 4);
        std::vector<double> perm = {x[2], x[0], x[3], x[1]};
        CHECK(log_joint_density_unnormalized(spec, perm, 4) ==
              doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("theta=1 equals independently coded squared Vandermonde") {
    const EnsembleSpec spec = EnsembleSpec::make(1, 1.0, GaussPower{0.0});
    Rng rng(11);
    std::vector<double> x(5);
    for (int rep = 0; rep < 20; ++rep) {
        for (double& xi : x) xi = rng.uniform(-2.0, 2.0);
        double expected = 0.0;
        for (double xi : x) expected += -xi * xi;
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = i + 1; j < x.size(); ++j)
                expected += 2.0 * std::log(std::abs(x[i] - x[j]));
        CHECK(log_joint_density_unnormalized(spec, x, 5) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("log_theta_difference factorization") {
    CHECK(log_theta_difference(2.0, 1.0, 3) == doctest::Approx(std::log(7.0)));
    CHECK(log_theta_difference(1.0, 1.0, 4) == kNegInf);
    // huge values stay finite in log space
    CHECK(std::isfinite(log_theta_difference(1e150, 2e150, 5)));
    // near-coincidence: no catastrophic cancellation,
    // log|x^2-y^2| = log|x-y| + log(x+y)
    const double x = 1.0, y = 1.0 + 1e-12;
    CHECK(log_theta_difference(x, y, 2) ==
          doctest::Approx(std::log(1e-12) + std::log(x + y)).epsilon(1e-3));
}

TEST_CASE("angelesco density") {
    AngelescoSpec spec;
    TablePotential zero1{{-1.0, 0.0}, {0.0, 0.0}};
    TablePotential zero2{{0.0, 1.0}, {0.0, 0.0}};
    spec.species.push_back({Interval{-1.0, 0.0}, 0.5, zero1});
    spec.species.push_back({Interval{0.0, 1.0}, 0.5, zero2});

    CHECK(log_joint_density_angelesco(spec, {{-0.5}, {0.5}}, 2) == doctest::Approx(0.0));
    CHECK(log_joint_density_angelesco(spec, {{-0.5, -0.5}, {0.25, 0.75}}, 4) == kNegInf);

    // independently coded brute-force product over the literal density
    const std::vector<std::vector<double>> blocks{{-0.75, -0.25}, {0.25, 0.75}};
    double expected = 0.0;
    for (const auto& blk : blocks)
        for (std::size_t i = 0; i < blk.size(); ++i)
            for (std::size_t j = i + 1; j < blk.size(); ++j)
                expected += 2.0 * std::log(std::abs(blk[i] - blk[j]));
    for (double a : blocks[0])
        for (double b : blocks[1]) expected += std::log(std::abs(a - b));
    CHECK(log_joint_density_angelesco(spec, blocks, 4) ==
          doctest::Approx(expected).epsilon(1e-12));

    // block outside its interval: soft rejection
    CHECK(log_joint_density_angelesco(spec, {{0.5}, {0.75}}, 2) == kNegInf);
    // block size mismatch: contract error
    CHECK_THROWS_AS(log_joint_density_angelesco(spec, {{-0.5, -0.4}, {0.5}}, 2), ContractError);
}

TEST_CASE("angelesco cross-term sign is constant on disjoint intervals") {
    Rng rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        const double a = rng.uniform(-1.0, 0.0), b = rng.uniform(0.1, 1.0);
        CHECK(a - b < 0.0);
    }
}

TEST_CASE("angelesco spec validation") {
    AngelescoSpec overlap;
    TablePotential z{{-1.0, 1.0}, {0.0, 0.0}};
    overlap.species.push_back({Interval{-1.0, 0.5}, 0.5, z});
    overlap.species.push_back({Interval{0.0, 1.0}, 0.5, z});
    CHECK_THROWS_AS(overlap.validate(), ConfigError);

    AngelescoSpec bad_ratio;
    bad_ratio.species.push_back({Interval{-1.0, -0.1}, 0.7, z});
    bad_ratio.species.push_back({Interval{0.1, 1.0}, 0.7, z});
    CHECK_THROWS_AS(bad_ratio.validate(), ConfigError);

    AngelescoSpec ok;
    ok.species.push_back({Interval{-1.0, -0.1}, 0.26, z});
    ok.species.push_back({Interval{0.1, 1.0}, 0.74, z});
    CHECK_NOTHROW(ok.validate());
    const auto sizes = ok.block_sizes(10);
    CHECK(sizes[0] + sizes[1] == 10);
    CHECK(sizes[0] == 3);  // largest-remainder rounding of 2.6 and 7.4
    CHECK(sizes[1] == 7);
}

TEST_CASE("tail assumption diagnostic") {
    CHECK(check_tail_assumption(boson_spec(), 0.1, 100.0).satisfied);
    // essentially flat weight on [0, inf): polynomial prefactor wins
    const EnsembleSpec flat = EnsembleSpec::make(1, 1.0, PowerExp{0.0, 1e-9},
                                                 Interval{0.0, kPosInf});
    CHECK_FALSE(check_tail_assumption(flat, 0.1, 100.0).satisfied);
    const EnsembleSpec sw = EnsembleSpec::make(1, 1.0, LogSquare{1.0}, Interval{0.0, kPosInf});
    CHECK(check_tail_assumption(sw, 0.1, 1e6).satisfied);
    // bounded support: trivially satisfied
    const TailReport rep = check_tail_assumption(flat_unit(1), 0.1, 10.0);
    CHECK(rep.satisfied);
    CHECK(rep.trivially);
}
