#include "loggas/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "loggas/errors.hpp"

namespace loggas {

int EnsembleSpec::particles(int n) const {
    return static_cast<int>(std::lround(kappa * n));
}

EnsembleSpec EnsembleSpec::make(int theta, double kappa, WeightFamily w) {
    EnsembleSpec s;
    s.theta = theta;
    s.kappa = kappa;
    s.weight = std::move(w);
    s.support = weight_domain(s.weight);
    if (theta % 2 == 0 && s.support.lo < 0.0) s.support.lo = 0.0;
    s.validate();
    return s;
}

EnsembleSpec EnsembleSpec::make(int theta, double kappa, WeightFamily w, Interval support) {
    EnsembleSpec s;
    s.theta = theta;
    s.kappa = kappa;
    s.weight = std::move(w);
    s.support = support;
    s.validate();
    return s;
}

void EnsembleSpec::validate() const {
    if (theta < 1) throw ConfigError("theta must be a positive integer");
    if (!(kappa > 0.0)) throw ConfigError("kappa must be positive");
    if (!(support.lo < support.hi)) throw ConfigError("support must be a nondegenerate interval");
    if (theta % 2 == 0 && support.lo < 0.0)
        throw ConfigError("theta even requires support inside [0, inf)");
    validate_weight(weight);
    const Interval dom = weight_domain(weight);
    if (support.lo < dom.lo || support.hi > dom.hi)
        throw ConfigError("support exceeds the weight family's domain");
}

std::vector<int> AngelescoSpec::block_sizes(int n) const {
    const int p = species_count();
    std::vector<int> sizes(p);
    std::vector<std::pair<double, int>> rema(p);
    int assigned = 0;
    for (int j = 0; j < p; ++j) {
        const double exact = species[j].ratio * n;
        sizes[j] = static_cast<int>(std::floor(exact));
        assigned += sizes[j];
        rema[j] = {exact - sizes[j], j};
    }
    std::sort(rema.begin(), rema.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int k = 0; k < n - assigned; ++k) ++sizes[rema[static_cast<std::size_t>(k)].second];
    return sizes;
}

void AngelescoSpec::validate() const {
    if (species.size() < 2) throw ConfigError("Angelesco ensemble needs at least 2 species");
    double rsum = 0.0;
    for (const auto& s : species) {
        if (!(s.ratio > 0.0 && s.ratio < 1.0))
            throw ConfigError("species ratio must lie in (0,1)");
        if (!s.interval.bounded() || !(s.interval.lo < s.interval.hi))
            throw ConfigError("species interval must be bounded and nondegenerate");
        validate_weight(s.potential);
        rsum += s.ratio;
    }
    if (std::abs(rsum - 1.0) > 1e-12) throw ConfigError("species ratios must sum to 1");
    for (std::size_t i = 0; i < species.size(); ++i)
        for (std::size_t j = i + 1; j < species.size(); ++j) {
            const auto& a = species[i].interval;
            const auto& b = species[j].interval;
            if (a.lo < b.hi && b.lo < a.hi)
                throw ConfigError("species intervals must be pairwise disjoint");
        }
}

double potential_value(const WeightFamily& w, double x) {
    return -log_weight_value(w, x);
}

double log_weight(const EnsembleSpec& spec, double x, int n) {
    if (n < 1) throw ContractError("log_weight: n must be positive");
    if (!spec.support.contains(x)) throw std::domain_error("log_weight: x outside the support");
    return log_weight_value(spec.weight, x);
}

double log_theta_difference(double x, double y, int theta) {
    if (x == y) return kNegInf;
    if (theta == 1) return std::log(std::abs(x - y));
    // |x^t - y^t| = |x - y| * |sum_{k<t} x^k y^{t-1-k}|, with the sum evaluated
    // after scaling by max(|x|,|y|)^{t-1} to avoid overflow at large theta.
    const double m = std::max(std::abs(x), std::abs(y));
    if (m == 0.0) return kNegInf;
    const double xs = x / m, ys = y / m;
    double sum = 0.0;
    double term = std::pow(ys, theta - 1);  // xs^k * ys^(t-1-k) at k = 0
    for (int k = 0; k < theta; ++k) {
        sum += term;
        if (ys != 0.0) {
            term = term / ys * xs;
        } else {
            // ys == 0: only the k = theta-1 term xs^{theta-1} survives
            term = (k == theta - 2) ? std::pow(xs, theta - 1) : 0.0;
        }
    }
    if (sum == 0.0) return kNegInf;
    return std::log(std::abs(x - y)) + (theta - 1) * std::log(m) + std::log(std::abs(sum));
}

double log_joint_density_unnormalized(const EnsembleSpec& spec, std::span<const double> x, int n) {
    if (static_cast<int>(x.size()) != spec.particles(n))
        throw ContractError("log_joint_density_unnormalized: coordinate count != p(n)");
    double total = 0.0;
    for (double xi : x) {
        if (!spec.support.contains(xi)) return kNegInf;
        const double lw = log_weight_value(spec.weight, xi);
        if (lw == kNegInf) return kNegInf;
        total += lw;
    }
    const std::size_t p = x.size();
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) {
            if (x[i] == x[j]) return kNegInf;
            total += std::log(std::abs(x[i] - x[j])) + log_theta_difference(x[i], x[j], spec.theta);
        }
    return total;
}

double log_joint_density_angelesco(const AngelescoSpec& spec,
                                   const std::vector<std::vector<double>>& blocks, int n) {
    const int p = spec.species_count();
    if (static_cast<int>(blocks.size()) != p)
        throw ContractError("log_joint_density_angelesco: species count mismatch");
    const auto sizes = spec.block_sizes(n);
    for (int j = 0; j < p; ++j)
        if (static_cast<int>(blocks[j].size()) != sizes[j])
            throw ContractError("log_joint_density_angelesco: block size mismatch");

    double total = 0.0;
    for (int j = 0; j < p; ++j) {
        const auto& blk = blocks[j];
        const auto& sp = spec.species[j];
        for (double xi : blk) {
            if (!sp.interval.contains(xi)) return kNegInf;
            const double v = potential_value(sp.potential, xi);
            if (v == kPosInf) return kNegInf;
            total -= static_cast<double>(n) * v;
        }
        // squared Vandermonde within the species
        for (std::size_t a = 0; a < blk.size(); ++a)
            for (std::size_t b = a + 1; b < blk.size(); ++b) {
                if (blk[a] == blk[b]) return kNegInf;
                total += 2.0 * std::log(std::abs(blk[a] - blk[b]));
            }
    }
    // cross terms; the sign of Delta(X_i, X_j) is constant because the
    // intervals are disjoint, so |.| is safe
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            for (double xi : blocks[i])
                for (double yj : blocks[j]) total += std::log(std::abs(xi - yj));
    return total;
}

TailReport check_tail_assumption(const EnsembleSpec& spec, double epsilon, double probe_radius) {
    TailReport rep;
    if (spec.support.bounded()) {
        rep.trivially = true;
        rep.satisfied = true;
        rep.message = "bounded support: (a2) holds trivially";
        return rep;
    }
    if (!(epsilon > 0.0)) throw ConfigError("check_tail_assumption: epsilon must be positive");
    const double exponent = (spec.theta + 1) * (spec.kappa + epsilon);
    const int points = 64;
    const double start = 1.0;
    for (int side = 0; side < 2; ++side) {
        const double sgn = side == 0 ? 1.0 : -1.0;
        if (side == 0 && spec.support.hi < kPosInf) continue;
        if (side == 1 && spec.support.lo > kNegInf) continue;
        for (int k = 0; k < points; ++k) {
            const double x =
                sgn * start * std::pow(probe_radius / start, static_cast<double>(k) / (points - 1));
            rep.abscissae.push_back(x);
            rep.values.push_back(exponent * std::log(std::abs(x)) + log_weight_value(spec.weight, x));
        }
    }
    // satisfied when the outer half of the probe is nonincreasing and the
    // boundary value is far below 0 on the log scale
    bool ok = true;
    const std::size_t half = rep.values.size() / 2;
    for (std::size_t k = half; k + 1 < rep.values.size(); ++k)
        if (rep.values[k + 1] > rep.values[k]) ok = false;
    if (!rep.values.empty() && rep.values.back() > std::log(1e-6)) ok = false;
    rep.satisfied = ok;
    rep.message = ok ? "tail decay consistent with (a2) out to the probe radius"
                     : "tail decay NOT observed: (a2) likely violated";
    return rep;
}

}  // namespace loggas
