#include "loggas/kernel.hpp"

#include <cmath>

#include "loggas/errors.hpp"

namespace loggas {

InteractionKernel assemble_kernel(const EnsembleSpec& spec, double a, double b, int m) {
    if (!(a < b) || m < 1) throw ConfigError("assemble_kernel: need a < b and m >= 1");
    if (a < spec.support.lo || b > spec.support.hi)
        throw ConfigError("assemble_kernel: grid leaves the support");
    InteractionKernel ker;
    ker.delta = (b - a) / m;
    ker.nodes.resize(m);
    for (int i = 0; i < m; ++i) ker.nodes[i] = a + (i + 0.5) * ker.delta;
    ker.K.assign(static_cast<std::size_t>(m) * m, 0.0);
    ker.U.resize(m);

    const int theta = spec.theta;
    for (int i = 0; i < m; ++i) {
        ker.U[i] = -log_weight_value(spec.weight, ker.nodes[i]);
        for (int j = 0; j < i; ++j) {
            const double v = -(std::log(std::abs(ker.nodes[i] - ker.nodes[j])) +
                               log_theta_difference(ker.nodes[i], ker.nodes[j], theta));
            ker.K[static_cast<std::size_t>(i) * m + j] = v;
            ker.K[static_cast<std::size_t>(j) * m + i] = v;
        }
        // self cell: exact double average of -log|x-y| over the cell pair is
        // -(log delta - 3/2); the theta factor contributes one more copy plus
        // the smooth local slope q_theta(x) = theta x^(theta-1)
        double diag = -2.0 * (std::log(ker.delta) - 1.5);
        if (theta > 1) {
            const double q = theta * std::pow(std::abs(ker.nodes[i]), theta - 1);
            diag -= std::log(q);
        }
        ker.K[static_cast<std::size_t>(i) * m + i] = diag;
    }
    return ker;
}

InteractionKernel assemble_kernel(const EnsembleSpec& spec, const GridMeasure& grid) {
    grid.check_invariants();
    const double a = grid.nodes.front() - 0.5 * grid.delta;
    const double b = grid.nodes.back() + 0.5 * grid.delta;
    return assemble_kernel(spec, a, b, grid.size());
}

double energy(const InteractionKernel& kernel, const GridMeasure& mu, double kappa) {
    const int m = kernel.size();
    if (mu.size() != m) throw ContractError("energy: dimension mismatch");
    double quad = 0.0, lin = 0.0;
    for (int i = 0; i < m; ++i) {
        const double wi = mu.weights[i];
        if (wi == 0.0) continue;
        lin += kernel.U[i] * wi;
        double row = 0.0;
        for (int j = 0; j < m; ++j) row += kernel.k(i, j) * mu.weights[j];
        quad += wi * row;
    }
    return 0.5 * kappa * kappa * quad + kappa * lin;
}

Interval suggest_truncation(const EnsembleSpec& spec) {
    if (spec.support.bounded()) return spec.support;
    const double kappa = spec.kappa;
    const auto phi = [&](double x) {
        return kappa * potential_value(spec.weight, x) -
               kappa * kappa * (spec.theta + 1) * std::log(1.0 + std::abs(x));
    };
    // coarse scan for the minimum of the effective potential
    const double core_lo = spec.support.lo > kNegInf ? spec.support.lo : -8.0;
    const double core_hi = spec.support.hi < kPosInf ? spec.support.hi : 8.0;
    double phi_min = kPosInf;
    const int scan = 512;
    for (int i = 1; i < scan; ++i) {
        const double x = core_lo + (core_hi - core_lo) * i / scan;
        phi_min = std::min(phi_min, phi(x));
    }
    const double rise = 20.0;
    Interval trunc = spec.support;
    if (spec.support.hi == kPosInf) {
        double b = std::max(1.0, core_hi);
        while (phi(b) < phi_min + rise && b < 1e12) b *= 1.25;
        trunc.hi = b;
    }
    if (spec.support.lo == kNegInf) {
        double a = std::min(-1.0, core_lo);
        while (phi(a) < phi_min + rise && a > -1e12) a *= 1.25;
        trunc.lo = a;
    }
    if (!(trunc.lo < trunc.hi) || !trunc.bounded())
        throw NumericalError("suggest_truncation: effective potential does not confine");
    return trunc;
}

}  // namespace loggas
