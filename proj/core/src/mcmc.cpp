#include "loggas/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "loggas/errors.hpp"
#include "loggas/rng.hpp"

namespace loggas {

void ChainConfig::validate() const {
    if (n < 1) throw ConfigError("ChainConfig: n must be positive");
    if (sweeps < 1) throw ConfigError("ChainConfig: sweeps must be positive");
    if (burn_in < 0 || burn_in >= sweeps) throw ConfigError("ChainConfig: need 0 <= burn_in < sweeps");
    if (thinning < 1) throw ConfigError("ChainConfig: thinning must be >= 1");
    if (!(step_size > 0.0)) throw ConfigError("ChainConfig: step_size must be positive");
}

namespace {

// bounded initialization core of the support, centered per weight family
Interval init_core(const EnsembleSpec& spec) {
    const auto& sup = spec.support;
    double center, radius;
    if (const auto* pe = std::get_if<PowerExp>(&spec.weight)) {
        center = 0.0;
        radius = 4.0 * (spec.theta + 1) * spec.kappa / pe->tau;
    } else if (std::holds_alternative<GaussPower>(spec.weight)) {
        center = 0.0;
        radius = 2.0;
    } else if (std::holds_alternative<JacobiPower>(spec.weight)) {
        center = 0.5;
        radius = 0.5;
    } else if (std::holds_alternative<LogSquare>(spec.weight)) {
        center = 1.0;
        radius = std::exp(2.0);
    } else {
        const auto& tp = std::get<TablePotential>(spec.weight);
        center = 0.5 * (tp.nodes.front() + tp.nodes.back());
        radius = 0.5 * (tp.nodes.back() - tp.nodes.front());
    }
    Interval core{std::max(sup.lo, center - radius), std::min(sup.hi, center + radius)};
    if (!(core.lo < core.hi)) throw ConfigError("run_chain: empty initialization core");
    return core;
}

struct AdaptState {
    double step;
    bool adapting;
    long batch_accepts = 0;
    long batch_proposals = 0;

    void record(bool accepted) {
        ++batch_proposals;
        if (accepted) ++batch_accepts;
    }

    // one adaptation batch = 50 sweeps worth of proposals
    void maybe_adapt(long proposals_per_sweep) {
        if (!adapting || batch_proposals < 50 * proposals_per_sweep) return;
        const double rate = static_cast<double>(batch_accepts) / batch_proposals;
        if (rate < 0.3) step *= 0.9;
        if (rate > 0.5) step *= 1.1;
        batch_accepts = 0;
        batch_proposals = 0;
    }
};

}  // namespace

SampleBatch run_chain(const EnsembleSpec& spec, const ChainConfig& cfg) {
    spec.validate();
    cfg.validate();
    const int p = spec.particles(cfg.n);
    if (p < 1) throw ConfigError("run_chain: p(n) must be positive");

    Rng rng(cfg.seed);
    const Interval core = init_core(spec);
    std::vector<double> x(p);
    for (double& xi : x) xi = rng.uniform(core.lo, core.hi);

    // per-particle field factor (collapsed n-th power of the finite-n weight)
    const auto field = [&](double v) -> double {
        if (!spec.support.contains(v)) return kNegInf;
        return log_weight_value(spec.weight, v);
    };
    const auto pair_term = [&](double a, double b) -> double {
        if (a == b) return kNegInf;
        return std::log(std::abs(a - b)) + log_theta_difference(a, b, spec.theta);
    };
    const auto delta_for = [&](int k, double xnew) -> double {
        double d = field(xnew) - field(x[k]);
        if (d == kNegInf) return kNegInf;
        for (int j = 0; j < p; ++j) {
            if (j == k) continue;
            const double t_new = pair_term(xnew, x[j]);
            if (t_new == kNegInf) return kNegInf;
            d += t_new - pair_term(x[k], x[j]);
        }
        return d;
    };

    AdaptState adapt{cfg.step_size, cfg.adapt};
    long kept_accepts = 0, kept_proposals = 0, burn_accepts = 0;
    SampleBatch batch;
    {
        std::ostringstream id;
        id << "biorthogonal theta=" << spec.theta << " kappa=" << spec.kappa << " n=" << cfg.n;
        batch.ensemble_id = id.str();
    }

    for (long sweep = 0; sweep < cfg.sweeps; ++sweep) {
        const bool burning = sweep < cfg.burn_in;
        for (int k = 0; k < p; ++k) {
            const double xnew = x[k] + rng.uniform(-adapt.step, adapt.step);
            const double d = delta_for(k, xnew);
            const bool accepted = d > kNegInf && (d >= 0.0 || std::log(rng.uniform()) < d);
            if (accepted) x[k] = xnew;
            if (burning) {
                adapt.record(accepted);
                burn_accepts += accepted;
            } else {
                kept_accepts += accepted;
                ++kept_proposals;
            }
        }
        if (burning) {
            adapt.maybe_adapt(p);
            if (sweep + 1 == cfg.burn_in) {
                adapt.adapting = false;  // freeze to preserve detailed balance
                if (cfg.burn_in > 0 && burn_accepts == 0)
                    throw NumericalError(
                        "run_chain: no proposal accepted during burn-in; reduce step_size");
            }
        } else if ((sweep - cfg.burn_in) % cfg.thinning == 0) {
            for (double xi : x)
                if (!spec.support.contains(xi))
                    throw NumericalError("run_chain: stored coordinate left the support");
            const double ld = log_joint_density_unnormalized(spec, x, cfg.n);
            if (!std::isfinite(ld))
                throw NumericalError("run_chain: stored configuration has non-finite density");
            batch.configurations.push_back(x);
            batch.log_density_trace.push_back(ld);
        }
    }
    batch.acceptance_rate =
        kept_proposals > 0 ? static_cast<double>(kept_accepts) / kept_proposals : 0.0;
    batch.final_step_size = adapt.step;
    return batch;
}

SampleBatch run_chain(const AngelescoSpec& spec, const ChainConfig& cfg) {
    spec.validate();
    cfg.validate();
    const auto sizes = spec.block_sizes(cfg.n);
    const int p = spec.species_count();

    Rng rng(cfg.seed);
    std::vector<std::vector<double>> blocks(p);
    for (int j = 0; j < p; ++j) {
        blocks[j].resize(sizes[j]);
        for (double& v : blocks[j])
            v = rng.uniform(spec.species[j].interval.lo, spec.species[j].interval.hi);
    }

    const double n_scale = static_cast<double>(cfg.n);
    const auto delta_for = [&](int jb, int k, double xnew) -> double {
        const auto& iv = spec.species[jb].interval;
        if (!iv.contains(xnew)) return kNegInf;
        const double v_new = potential_value(spec.species[jb].potential, xnew);
        if (v_new == kPosInf) return kNegInf;
        const double xold = blocks[jb][k];
        double d = -n_scale * (v_new - potential_value(spec.species[jb].potential, xold));
        for (int j = 0; j < p; ++j) {
            const double coef = (j == jb) ? 2.0 : 1.0;
            for (std::size_t i = 0; i < blocks[j].size(); ++i) {
                if (j == jb && static_cast<int>(i) == k) continue;
                if (blocks[j][i] == xnew) return kNegInf;
                d += coef * (std::log(std::abs(xnew - blocks[j][i])) -
                             std::log(std::abs(xold - blocks[j][i])));
            }
        }
        return d;
    };

    AdaptState adapt{cfg.step_size, cfg.adapt};
    long kept_accepts = 0, kept_proposals = 0, burn_accepts = 0;
    const int total = static_cast<int>(std::accumulate(sizes.begin(), sizes.end(), 0));
    SampleBatch batch;
    {
        std::ostringstream id;
        id << "angelesco p=" << p << " n=" << cfg.n;
        batch.ensemble_id = id.str();
    }

    for (long sweep = 0; sweep < cfg.sweeps; ++sweep) {
        const bool burning = sweep < cfg.burn_in;
        for (int jb = 0; jb < p; ++jb)
            for (std::size_t k = 0; k < blocks[jb].size(); ++k) {
                const double xnew = blocks[jb][k] + rng.uniform(-adapt.step, adapt.step);
                const double d = delta_for(jb, static_cast<int>(k), xnew);
                const bool accepted = d > kNegInf && (d >= 0.0 || std::log(rng.uniform()) < d);
                if (accepted) blocks[jb][k] = xnew;
                if (burning) {
                    adapt.record(accepted);
                    burn_accepts += accepted;
                } else {
                    kept_accepts += accepted;
                    ++kept_proposals;
                }
            }
        if (burning) {
            adapt.maybe_adapt(total);
            if (sweep + 1 == cfg.burn_in) {
                adapt.adapting = false;
                if (cfg.burn_in > 0 && burn_accepts == 0)
                    throw NumericalError(
                        "run_chain: no proposal accepted during burn-in; reduce step_size");
            }
        } else if ((sweep - cfg.burn_in) % cfg.thinning == 0) {
            const double ld = log_joint_density_angelesco(spec, blocks, cfg.n);
            if (!std::isfinite(ld))
                throw NumericalError("run_chain: stored configuration has non-finite density");
            std::vector<double> flat;
            flat.reserve(total);
            for (const auto& blk : blocks) flat.insert(flat.end(), blk.begin(), blk.end());
            batch.configurations.push_back(std::move(flat));
            batch.log_density_trace.push_back(ld);
        }
    }
    batch.acceptance_rate =
        kept_proposals > 0 ? static_cast<double>(kept_accepts) / kept_proposals : 0.0;
    batch.final_step_size = adapt.step;
    return batch;
}

namespace {

EmpiricalMeasure make_empirical(std::vector<double> atoms) {
    std::sort(atoms.begin(), atoms.end());
    EmpiricalMeasure em;
    em.atom_mass = 1.0 / static_cast<double>(atoms.size());
    em.atoms = std::move(atoms);
    return em;
}

}  // namespace

DiscreteMeasure EmpiricalMeasure::discrete() const {
    return DiscreteMeasure::from_atoms(atoms, std::vector<double>(atoms.size(), atom_mass));
}

EmpiricalMeasure empirical_measure(const SampleBatch& batch, bool pool) {
    if (batch.configurations.empty()) throw ContractError("empirical_measure: empty batch");
    if (!pool) return empirical_measure_single(batch, batch.configurations.size() - 1);
    std::vector<double> atoms;
    for (const auto& cfg : batch.configurations) atoms.insert(atoms.end(), cfg.begin(), cfg.end());
    return make_empirical(std::move(atoms));
}

EmpiricalMeasure empirical_measure_single(const SampleBatch& batch, std::size_t config_index) {
    if (config_index >= batch.configurations.size())
        throw ContractError("empirical_measure_single: index out of range");
    return make_empirical(batch.configurations[config_index]);
}

EmpiricalMeasure empirical_measure_species(const SampleBatch& batch, const AngelescoSpec& spec,
                                           int n, int species, bool pool) {
    const auto sizes = spec.block_sizes(n);
    if (species < 0 || species >= spec.species_count())
        throw ContractError("empirical_measure_species: species out of range");
    std::size_t offset = 0;
    for (int j = 0; j < species; ++j) offset += static_cast<std::size_t>(sizes[j]);
    const std::size_t len = static_cast<std::size_t>(sizes[species]);
    std::vector<double> atoms;
    const std::size_t from = pool ? 0 : batch.configurations.size() - 1;
    for (std::size_t c = from; c < batch.configurations.size(); ++c) {
        const auto& cfg = batch.configurations[c];
        if (cfg.size() < offset + len)
            throw ContractError("empirical_measure_species: configuration too short");
        atoms.insert(atoms.end(), cfg.begin() + static_cast<long>(offset),
                     cfg.begin() + static_cast<long>(offset + len));
    }
    return make_empirical(std::move(atoms));
}

double integrated_autocorrelation(const std::vector<double>& series) {
    const std::size_t n = series.size();
    if (n < 4) return 1.0;
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : series) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    if (var == 0.0) return 1.0;
    double tau = 1.0;
    for (std::size_t lag = 1; lag < n / 2; ++lag) {
        double c = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) c += (series[i] - mean) * (series[i + lag] - mean);
        c /= static_cast<double>(n - lag) * var;
        if (c <= 0.0) break;  // initial positive sequence cutoff
        tau += 2.0 * c;
    }
    return tau;
}

}  // namespace loggas
