#include "loggas/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "loggas/errors.hpp"
#include "loggas/kernel.hpp"
#include "loggas/quadrature.hpp"

namespace loggas {

namespace {

struct AxisRule {
    std::vector<double> nodes;    // ascending on [a, b]
    std::vector<double> weights;  // positive
};

// geometrically graded composite rule (same panel layout as integrate_graded)
// so endpoint weight singularities/zeros are handled
AxisRule axis_rule(double a, double b, int resolution) {
    const int order = 16;
    const int per_side = std::max(1, resolution / (2 * order));
    const double grading = 0.5;
    const auto& gl = gauss_legendre(order);
    AxisRule rule;
    const double mid = 0.5 * (a + b);

    // boundaries of all panels, left half then right half, ascending
    std::vector<std::pair<double, double>> panels;
    double outer = mid - a;
    std::vector<std::pair<double, double>> left;
    for (int k = 0; k < per_side; ++k) {
        const double inner = (k + 1 == per_side) ? 0.0 : outer * grading;
        left.emplace_back(a + inner, a + outer);
        outer = inner;
    }
    for (auto it = left.rbegin(); it != left.rend(); ++it) panels.push_back(*it);
    outer = b - mid;
    for (int k = 0; k < per_side; ++k) {
        const double inner = (k + 1 == per_side) ? 0.0 : outer * grading;
        panels.emplace_back(b - outer, b - inner);
        outer = inner;
    }
    // right-half panels were generated outermost-first; restore ascending order
    std::sort(panels.begin(), panels.end());

    for (const auto& [lo, hi] : panels) {
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            rule.nodes.push_back(c + h * gl.nodes[i]);
            rule.weights.push_back(h * gl.weights[i]);
        }
    }
    return rule;
}

struct TensorSums {
    double z = 0.0;
    std::vector<double> marginal;  // unnormalized mass per first-axis node
    std::vector<double> event_mass;
};

TensorSums tensor_integrate(const EnsembleSpec& spec, int n, int p, const AxisRule& rule,
                            const std::vector<OracleEvent>& events) {
    const std::size_t m = rule.nodes.size();
    TensorSums sums;
    sums.marginal.assign(m, 0.0);
    sums.event_mass.assign(events.size(), 0.0);
    std::vector<double> x(static_cast<std::size_t>(p));
    std::vector<std::size_t> idx(static_cast<std::size_t>(p), 0);
    // precompute g values on the axis once per event
    std::vector<std::vector<double>> gvals(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) {
        gvals[e].resize(m);
        for (std::size_t i = 0; i < m; ++i) gvals[e][i] = events[e].g(rule.nodes[i]);
    }

    while (true) {
        double wprod = 1.0;
        for (int k = 0; k < p; ++k) {
            x[static_cast<std::size_t>(k)] = rule.nodes[idx[static_cast<std::size_t>(k)]];
            wprod *= rule.weights[idx[static_cast<std::size_t>(k)]];
        }
        const double ld = log_joint_density_unnormalized(spec, x, n);
        if (ld > kNegInf) {
            const double mass = wprod * std::exp(ld);
            sums.z += mass;
            sums.marginal[idx[0]] += mass;
            for (std::size_t e = 0; e < events.size(); ++e) {
                double mean_g = 0.0;
                for (int k = 0; k < p; ++k) mean_g += gvals[e][idx[static_cast<std::size_t>(k)]];
                mean_g /= p;
                if (mean_g >= events[e].threshold) sums.event_mass[e] += mass;
            }
        }
        // odometer over the p axis indices
        int k = p - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == m) {
            idx[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return sums;
}

}  // namespace

double OracleResult::cdf_at(double x) const {
    if (cdf_abscissae.empty()) throw ContractError("OracleResult: empty CDF table");
    if (x <= cdf_abscissae.front()) return 0.0;
    if (x >= cdf_abscissae.back()) return 1.0;
    const auto it = std::upper_bound(cdf_abscissae.begin(), cdf_abscissae.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - cdf_abscissae.begin());
    const double x0 = cdf_abscissae[j - 1], x1 = cdf_abscissae[j];
    const double f0 = cdf_values[j - 1], f1 = cdf_values[j];
    return f0 + (f1 - f0) * (x - x0) / (x1 - x0);
}

OracleResult quadrature_oracle(const EnsembleSpec& spec, int n, int resolution,
                               const std::vector<OracleEvent>& events) {
    spec.validate();
    if (n < 1 || n > 3) throw ConfigError("quadrature_oracle: n must be 1, 2 or 3");
    const int p = spec.particles(n);
    if (p < 1 || p > 3) throw ConfigError("quadrature_oracle: particle count must be 1..3");
    if (resolution < 32) throw ConfigError("quadrature_oracle: resolution must be >= 32");

    const Interval trunc = suggest_truncation(spec);
    const AxisRule full = axis_rule(trunc.lo, trunc.hi, resolution);
    const AxisRule half = axis_rule(trunc.lo, trunc.hi, resolution / 2);

    const TensorSums s = tensor_integrate(spec, n, p, full, events);
    const TensorSums s_half = tensor_integrate(spec, n, p, half, events);
    if (!(s.z > 0.0)) throw NumericalError("quadrature_oracle: vanishing partition function");

    OracleResult res;
    res.n = n;
    res.particle_count = p;
    res.z = s.z;
    res.log_z = std::log(s.z);
    res.truncation = trunc;
    res.error_estimate = std::abs(s.z - s_half.z);
    if (res.error_estimate > 0.01 * s.z)
        throw NumericalError("quadrature_oracle: error estimate above 1% of Z; raise resolution",
                             res.error_estimate / s.z);

    res.cdf_abscissae = full.nodes;
    res.cdf_values.resize(full.nodes.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < full.nodes.size(); ++i) {
        acc += s.marginal[i];
        res.cdf_values[i] = std::min(1.0, acc / s.z);
    }
    res.cdf_values.back() = 1.0;

    res.event_probabilities.resize(events.size());
    for (std::size_t e = 0; e < events.size(); ++e)
        res.event_probabilities[e] = std::clamp(s.event_mass[e] / s.z, 0.0, 1.0);
    return res;
}

}  // namespace loggas
