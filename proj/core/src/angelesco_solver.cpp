#include "loggas/angelesco_solver.hpp"

#include <cmath>

#include "loggas/errors.hpp"

namespace loggas {

namespace {

// self-interaction matrix of one species: cell-averaged -log|x-y|
std::vector<double> self_matrix(const GridMeasure& g) {
    const int m = g.size();
    std::vector<double> A(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < i; ++j) {
            const double v = -std::log(std::abs(g.nodes[i] - g.nodes[j]));
            A[static_cast<std::size_t>(i) * m + j] = v;
            A[static_cast<std::size_t>(j) * m + i] = v;
        }
        A[static_cast<std::size_t>(i) * m + i] = -(std::log(g.delta) - 1.5);
    }
    return A;
}

// field on grid a induced by measure mu_b through -log|x-y|
std::vector<double> cross_field(const GridMeasure& a, const GridMeasure& b) {
    std::vector<double> f(a.nodes.size(), 0.0);
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < b.nodes.size(); ++j) {
            if (b.weights[j] == 0.0) continue;
            s += b.weights[j] * -std::log(std::abs(a.nodes[i] - b.nodes[j]));
        }
        f[i] = s;
    }
    return f;
}

void check_grids(const AngelescoSpec& spec, const std::vector<GridMeasure>& grids) {
    if (grids.size() != spec.species.size())
        throw ContractError("angelesco: grids/species count mismatch");
    for (std::size_t j = 0; j < grids.size(); ++j) {
        grids[j].check_invariants();
        const auto& iv = spec.species[j].interval;
        if (grids[j].nodes.front() - 0.5 * grids[j].delta < iv.lo - 1e-12 ||
            grids[j].nodes.back() + 0.5 * grids[j].delta > iv.hi + 1e-12)
            throw ConfigError("angelesco: grid leaves its species interval");
    }
}

}  // namespace

double angelesco_energy(const AngelescoSpec& spec, const std::vector<GridMeasure>& mus) {
    check_grids(spec, mus);
    const int p = spec.species_count();
    double total = 0.0;
    for (int j = 0; j < p; ++j) {
        const double rj = spec.species[j].ratio;
        const auto A = self_matrix(mus[j]);
        const int m = mus[j].size();
        double quad_term = 0.0, pot = 0.0;
        for (int i = 0; i < m; ++i) {
            const double wi = mus[j].weights[i];
            if (wi == 0.0) continue;
            pot += wi * potential_value(spec.species[j].potential, mus[j].nodes[i]);
            double row = 0.0;
            for (int k = 0; k < m; ++k) row += A[static_cast<std::size_t>(i) * m + k] * mus[j].weights[k];
            quad_term += wi * row;
        }
        total += rj * rj * quad_term + rj * pot;
    }
    for (int j = 0; j < p; ++j)
        for (int k = j + 1; k < p; ++k) {
            const auto f = cross_field(mus[j], mus[k]);
            double cross = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) cross += mus[j].weights[i] * f[i];
            total += spec.species[j].ratio * spec.species[k].ratio * cross;
        }
    return total;
}

double angelesco_energy_bruteforce(const AngelescoSpec& spec,
                                   const std::vector<GridMeasure>& mus) {
    // plain double loops over atoms, sharing no code with the assembled path
    const int p = static_cast<int>(mus.size());
    double total = 0.0;
    for (int j = 0; j < p; ++j) {
        const double rj = spec.species[j].ratio;
        const auto& mu = mus[j];
        for (int a = 0; a < mu.size(); ++a) {
            total += rj * mu.weights[a] * potential_value(spec.species[j].potential, mu.nodes[a]);
            for (int b = 0; b < mu.size(); ++b) {
                const double dist =
                    a == b ? std::exp(std::log(mu.delta) - 1.5) : std::abs(mu.nodes[a] - mu.nodes[b]);
                total += -rj * rj * mu.weights[a] * mu.weights[b] * std::log(dist);
            }
        }
    }
    for (int j = 0; j < p; ++j)
        for (int k = j + 1; k < p; ++k)
            for (int a = 0; a < mus[j].size(); ++a)
                for (int b = 0; b < mus[k].size(); ++b)
                    total += -spec.species[j].ratio * spec.species[k].ratio * mus[j].weights[a] *
                             mus[k].weights[b] * std::log(std::abs(mus[j].nodes[a] - mus[k].nodes[b]));
    return total;
}

AngelescoRateReport minimize_angelesco(const AngelescoSpec& spec,
                                       const std::vector<GridMeasure>& grids, double tolerance,
                                       int max_cycles, double inner_tolerance) {
    spec.validate();
    check_grids(spec, grids);
    if (!(tolerance > 0.0)) throw ConfigError("minimize_angelesco: tolerance must be > 0");
    if (inner_tolerance <= 0.0) inner_tolerance = std::max(tolerance * 0.01, 1e-13);
    const int p = spec.species_count();

    std::vector<GridMeasure> mus = grids;
    for (auto& mu : mus) {
        const double u = 1.0 / mu.size();
        mu.weights.assign(mu.nodes.size(), u);
    }
    std::vector<std::vector<double>> self(p);
    for (int j = 0; j < p; ++j) self[j] = self_matrix(mus[j]);

    double total = angelesco_energy(spec, mus);
    AngelescoRateReport rep;
    int cycle = 0;
    for (; cycle < max_cycles; ++cycle) {
        for (int j = 0; j < p; ++j) {
            const double rj = spec.species[j].ratio;
            std::vector<double> lin(mus[j].nodes.size());
            for (std::size_t i = 0; i < lin.size(); ++i)
                lin[i] = potential_value(spec.species[j].potential, mus[j].nodes[i]);
            for (int k = 0; k < p; ++k) {
                if (k == j) continue;
                const auto f = cross_field(mus[j], mus[k]);
                const double rk = spec.species[k].ratio;
                for (std::size_t i = 0; i < lin.size(); ++i) lin[i] += rk * f[i];
            }
            for (double& v : lin) v *= rj;
            // block energy r_j^2 w'Aw + r_j (V_j + cross)'w as a simplex quadratic
            RateReport block = detail::minimize_quadratic_simplex(
                self[j], lin, mus[j].nodes, mus[j].delta, 2.0 * rj * rj, inner_tolerance, 0);
            mus[j].weights = block.minimizer.weights;
        }
        const double next = angelesco_energy(spec, mus);
        rep.last_cycle_improvement = total - next;
        if (next > total + 1e-10 * (1.0 + std::abs(total)))
            throw NumericalError("minimize_angelesco: cycle increased the energy", next - total);
        total = next;
        if (rep.last_cycle_improvement < tolerance) break;
    }
    if (cycle >= max_cycles)
        throw NumericalError("minimize_angelesco: cycle cap reached", rep.last_cycle_improvement);

    rep.minimizers = mus;
    rep.energy_value = total;
    rep.c_constant = -total;
    rep.cycles = cycle + 1;
    return rep;
}

}  // namespace loggas
