#include "loggas/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "loggas/errors.hpp"

namespace loggas {

DiscreteMeasure DiscreteMeasure::from_atoms(std::vector<double> atoms,
                                            std::vector<double> masses) {
    if (atoms.size() != masses.size()) throw ContractError("DiscreteMeasure: size mismatch");
    if (atoms.empty()) throw ContractError("DiscreteMeasure: empty");
    std::vector<std::size_t> order(atoms.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });
    DiscreteMeasure out;
    out.atoms.reserve(atoms.size());
    out.masses.reserve(atoms.size());
    for (std::size_t k : order) {
        if (masses[k] < 0.0) throw ContractError("DiscreteMeasure: negative mass");
        if (masses[k] == 0.0) continue;
        if (!out.atoms.empty() && out.atoms.back() == atoms[k]) {
            out.masses.back() += masses[k];  // coalesce duplicates
        } else {
            out.atoms.push_back(atoms[k]);
            out.masses.push_back(masses[k]);
        }
    }
    return out;
}

DiscreteMeasure DiscreteMeasure::from_points(std::vector<double> points) {
    const std::size_t n = points.size();
    return from_atoms(std::move(points), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteMeasure DiscreteMeasure::from_grid(const GridMeasure& g) {
    return from_atoms(g.nodes, g.weights);
}

double DiscreteMeasure::mean() const {
    double s = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) s += atoms[i] * masses[i];
    return s;
}

MeasurePair::MeasurePair(DiscreteMeasure a, DiscreteMeasure b)
    : first(std::move(a)), second(std::move(b)) {
    for (const auto* mm : {&first, &second}) {
        double total = 0.0;
        for (double m : mm->masses) total += m;
        if (std::abs(total - 1.0) > 1e-10)
            throw ContractError("MeasurePair: measure not normalized");
    }
}

namespace {

// sweep over the merged atom sequence, integrating h(|F - G|) between events
template <typename Accum>
double cdf_sweep(const MeasurePair& pair, Accum&& accum) {
    const auto& a = pair.first;
    const auto& b = pair.second;
    std::size_t i = 0, j = 0;
    double fa = 0.0, fb = 0.0, result = 0.0, prev_x = 0.0;
    bool started = false;
    while (i < a.atoms.size() || j < b.atoms.size()) {
        double x;
        if (j >= b.atoms.size() || (i < a.atoms.size() && a.atoms[i] <= b.atoms[j]))
            x = a.atoms[i];
        else
            x = b.atoms[j];
        if (started) result = accum(result, std::abs(fa - fb), x - prev_x);
        while (i < a.atoms.size() && a.atoms[i] == x) fa += a.masses[i++];
        while (j < b.atoms.size() && b.atoms[j] == x) fb += b.masses[j++];
        prev_x = x;
        started = true;
    }
    // trailing segment: both CDFs are 1
    return accum(result, std::abs(fa - fb), 0.0);
}

}  // namespace

double wasserstein1(const MeasurePair& pair) {
    return cdf_sweep(pair, [](double acc, double diff, double gap) { return acc + diff * gap; });
}

double ks_distance(const MeasurePair& pair) {
    return cdf_sweep(pair, [](double acc, double diff, double) { return std::max(acc, diff); });
}

BoundedLipschitzEstimate bounded_lipschitz(const MeasurePair& pair, int family_size) {
    if (family_size < 1) throw ContractError("bounded_lipschitz: family_size must be >= 1");
    // data-adaptive centers (quantiles of the pooled atoms) and geometric scales
    std::vector<double> pooled = pair.first.atoms;
    pooled.insert(pooled.end(), pair.second.atoms.begin(), pair.second.atoms.end());
    std::sort(pooled.begin(), pooled.end());
    const double span = std::max(pooled.back() - pooled.front(), 1e-12);

    const int n_centers = std::max(1, static_cast<int>(std::sqrt(family_size)));
    const int n_scales = std::max(1, (family_size + 2 * n_centers - 1) / (2 * n_centers));

    const auto integral_diff = [&](auto&& f) {
        double s = 0.0;
        for (std::size_t i = 0; i < pair.first.atoms.size(); ++i)
            s += pair.first.masses[i] * f(pair.first.atoms[i]);
        for (std::size_t i = 0; i < pair.second.atoms.size(); ++i)
            s -= pair.second.masses[i] * f(pair.second.atoms[i]);
        return std::abs(s);
    };

    double lower = 0.0;
    for (int ci = 0; ci < n_centers; ++ci) {
        const double qpos = (ci + 0.5) / n_centers;
        const double c = pooled[static_cast<std::size_t>(qpos * (pooled.size() - 1))];
        for (int si = 0; si < n_scales; ++si) {
            const double s = span * std::pow(0.5, si) + 1e-12;
            // tent of height 1 and Lipschitz constant 1/s, rescaled so l+sup = 1
            const double tent_scale = s / (s + 1.0);
            lower = std::max(lower, integral_diff([&](double x) {
                                 return tent_scale * std::max(0.0, 1.0 - std::abs(x - c) / s);
                             }));
            // nonnegative tanh step profile: sup h, Lipschitz h/(2s), h chosen
            // so the admissibility budget l + sup is exactly 1
            const double h = 2.0 * s / (2.0 * s + 1.0);
            lower = std::max(lower, integral_diff([&](double x) {
                                 return 0.5 * h * (1.0 + std::tanh((x - c) / s));
                             }));
        }
    }
    BoundedLipschitzEstimate est;
    est.lower = lower;
    est.upper = std::min(1.0, wasserstein1(pair));
    // the finite family is admissible, so the sandwich must close
    if (est.lower > est.upper + 1e-10)
        throw NumericalError("bounded_lipschitz: lower bound exceeded upper bound",
                             est.lower - est.upper);
    return est;
}

}  // namespace loggas
