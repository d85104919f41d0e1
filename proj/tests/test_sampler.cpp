#include <doctest.h>

#include <cmath>
#include <vector>

#include "loggas/ensemble.hpp"
#include "loggas/errors.hpp"
#include "loggas/mcmc.hpp"
#include "loggas/rng.hpp"

using namespace loggas;

namespace {

EnsembleSpec flat_unit() {
    return EnsembleSpec::make(1, 1.0, JacobiPower{0.0, 0.0}, Interval{0.0, 1.0});
}

EnsembleSpec truncated_exponential() {
    // log w = -x on [0, 3]
    return EnsembleSpec::make(1, 1.0, TablePotential{{0.0, 3.0}, {0.0, -3.0}});
}

AngelescoSpec mirror_spec() {
    TablePotential v1{{-2.0, -0.1}, {-4.0, -0.01}};  // V(x) = x^2 is not needed here;
    TablePotential v2{{0.1, 2.0}, {-0.01, -4.0}};    // any finite table works
    AngelescoSpec spec;
    spec.species.push_back({Interval{-2.0, -0.1}, 0.5, v1});
    spec.species.push_back({Interval{0.1, 2.0}, 0.5, v2});
    return spec;
}

}  // namespace

TEST_CASE("chain config validation") {
    ChainConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    ChainConfig bad = cfg;
    bad.n = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.burn_in = bad.sweeps;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.thinning = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.step_size = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("identical seeds give bit-identical batches") {
    ChainConfig cfg;
    cfg.n = 6;
    cfg.sweeps = 300;
    cfg.burn_in = 100;
    cfg.thinning = 5;
    cfg.seed = 42;
    const SampleBatch a = run_chain(flat_unit(), cfg);
    const SampleBatch b = run_chain(flat_unit(), cfg);
    REQUIRE(a.configurations.size() == b.configurations.size());
    for (std::size_t i = 0; i < a.configurations.size(); ++i)
        CHECK(a.configurations[i] == b.configurations[i]);  // exact, not approximate
    CHECK(a.acceptance_rate == b.acceptance_rate);
    CHECK(a.final_step_size == b.final_step_size);

    cfg.seed = 43;
    const SampleBatch c = run_chain(flat_unit(), cfg);
    CHECK(a.configurations.back() != c.configurations.back());
}

TEST_CASE("batch bookkeeping") {
    ChainConfig cfg;
    cfg.n = 4;
    cfg.sweeps = 257;
    cfg.burn_in = 50;
    cfg.thinning = 10;
    cfg.seed = 9;
    const SampleBatch b = run_chain(flat_unit(), cfg);
    // kept sweeps are burn_in, burn_in+thinning, ... below sweeps
    CHECK(b.configurations.size() == static_cast<std::size_t>((257 - 50 + 9) / 10));
    CHECK(b.log_density_trace.size() == b.configurations.size());
    for (double ld : b.log_density_trace) CHECK(std::isfinite(ld));
    CHECK(b.acceptance_rate > 0.0);
    CHECK(b.acceptance_rate <= 1.0);
    CHECK(b.final_step_size > 0.0);
    for (const auto& x : b.configurations) {
        REQUIRE(x.size() == 4);
        for (double xi : x) {
            CHECK(xi >= 0.0);
            CHECK(xi <= 1.0);
        }
    }
}

TEST_CASE("empirical measure construction") {
    SampleBatch batch;
    batch.configurations = {{3.0, 1.0, 2.0}};
    const EmpiricalMeasure em = empirical_measure(batch, true);
    CHECK(em.atoms == std::vector<double>{1.0, 2.0, 3.0});  // sorted
    CHECK(em.atom_mass == doctest::Approx(1.0 / 3.0));

    batch.configurations = {{0.4, 0.2}, {0.3, 0.1}};
    const EmpiricalMeasure pooled = empirical_measure(batch, true);
    CHECK(pooled.atoms == std::vector<double>{0.1, 0.2, 0.3, 0.4});
    CHECK(pooled.atom_mass == doctest::Approx(0.25));

    const EmpiricalMeasure last = empirical_measure(batch, false);
    CHECK(last.atoms == std::vector<double>{0.1, 0.3});
    CHECK(last.atom_mass == doctest::Approx(0.5));

    CHECK(empirical_measure_single(batch, 0).atoms == std::vector<double>{0.2, 0.4});
    CHECK_THROWS_AS(empirical_measure_single(batch, 5), ContractError);
    SampleBatch empty;
    CHECK_THROWS_AS(empirical_measure(empty, true), ContractError);
}

TEST_CASE("single-particle chain matches the truncated exponential law") {
    ChainConfig cfg;
    cfg.n = 1;
    cfg.sweeps = 30000;
    cfg.burn_in = 500;
    cfg.thinning = 1;
    cfg.seed = 2024;
    const SampleBatch b = run_chain(truncated_exponential(), cfg);
    const EmpiricalMeasure em = empirical_measure(b, true);
    double below = 0.0;
    for (double a : em.atoms) below += (a <= 1.0);
    below /= static_cast<double>(em.atoms.size());
    const double exact = (1.0 - std::exp(-1.0)) / (1.0 - std::exp(-3.0));
    CHECK(std::abs(below - exact) < 0.02);
}

TEST_CASE("single-particle chain matches Gaussian moments") {
    ChainConfig cfg;
    cfg.n = 1;
    cfg.sweeps = 30000;
    cfg.burn_in = 500;
    cfg.thinning = 1;
    cfg.seed = 7;
    const EnsembleSpec spec = EnsembleSpec::make(1, 1.0, GaussPower{0.0});
    const SampleBatch b = run_chain(spec, cfg);
    const EmpiricalMeasure em = empirical_measure(b, true);
    double mean = 0.0, second = 0.0;
    for (double a : em.atoms) {
        mean += a;
        second += a * a;
    }
    mean /= static_cast<double>(em.atoms.size());
    second /= static_cast<double>(em.atoms.size());
    // density proportional to exp(-x^2): mean 0, variance 1/2
    CHECK(std::abs(mean) < 0.05);
    CHECK(std::abs(second - mean * mean - 0.5) < 0.05);
}

TEST_CASE("oversized frozen step size aborts during burn-in") {
    ChainConfig cfg;
    cfg.n = 2;
    cfg.sweeps = 200;
    cfg.burn_in = 100;
    cfg.step_size = 1e8;
    cfg.adapt = false;
    cfg.seed = 5;
    CHECK_THROWS_AS(run_chain(flat_unit(), cfg), NumericalError);
}

TEST_CASE("support disjoint from the initialization core is rejected") {
    const EnsembleSpec spec =
        EnsembleSpec::make(1, 1.0, PowerExp{0.0, 1.0}, Interval{100.0, 200.0});
    ChainConfig cfg;
    cfg.n = 2;
    CHECK_THROWS_AS(run_chain(spec, cfg), ConfigError);
}

TEST_CASE("angelesco chain keeps blocks inside their intervals") {
    const AngelescoSpec spec = mirror_spec();
    ChainConfig cfg;
    cfg.n = 4;
    cfg.sweeps = 400;
    cfg.burn_in = 100;
    cfg.thinning = 5;
    cfg.seed = 31;
    const SampleBatch b = run_chain(spec, cfg);
    REQUIRE(!b.configurations.empty());
    for (const auto& x : b.configurations) {
        REQUIRE(x.size() == 4);  // blocks (2, 2), concatenated in species order
        CHECK(x[0] >= -2.0);
        CHECK(x[0] <= -0.1);
        CHECK(x[1] >= -2.0);
        CHECK(x[1] <= -0.1);
        CHECK(x[2] >= 0.1);
        CHECK(x[2] <= 2.0);
        CHECK(x[3] >= 0.1);
        CHECK(x[3] <= 2.0);
    }
    const EmpiricalMeasure left = empirical_measure_species(b, spec, 4, 0, true);
    for (double a : left.atoms) CHECK(a < 0.0);
    const EmpiricalMeasure right = empirical_measure_species(b, spec, 4, 1, false);
    CHECK(right.atoms.size() == 2);
    CHECK_THROWS_AS(empirical_measure_species(b, spec, 4, 2, true), ContractError);
}

TEST_CASE("integrated autocorrelation diagnostics") {
    Rng rng(77);
    std::vector<double> iid(4000);
    for (double& v : iid) v = rng.normal();
    const double tau_iid = integrated_autocorrelation(iid);
    CHECK(tau_iid > 0.5);
    CHECK(tau_iid < 2.0);

    // strongly correlated AR(1) series has a much larger time constant
    std::vector<double> ar(4000);
    ar[0] = rng.normal();
    for (std::size_t i = 1; i < ar.size(); ++i) ar[i] = 0.95 * ar[i - 1] + 0.1 * rng.normal();
    CHECK(integrated_autocorrelation(ar) > 5.0);

    CHECK(integrated_autocorrelation({1.0, 1.0, 1.0, 1.0, 1.0}) == 1.0);
    CHECK(integrated_autocorrelation({1.0, 2.0}) == 1.0);
}
