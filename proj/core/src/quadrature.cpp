#include "loggas/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "loggas/errors.hpp"

namespace loggas {

namespace {

GaussLegendreRule compute_rule(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess, Newton on P_n
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
    if (order < 1) throw ContractError("gauss_legendre: order must be >= 1");
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

double integrate_panel(const std::function<double(double)>& f, double a, double b, int order) {
    const auto& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

double integrate(const std::function<double(double)>& f, double a, double b, int panels,
                 int order) {
    double sum = 0.0;
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) sum += integrate_panel(f, a + k * h, a + (k + 1) * h, order);
    return sum;
}

double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        int panels_per_side, int order, double grading) {
    // break [a, b] at the midpoint; on each half, panels shrink geometrically
    // toward the endpoint
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (int side = 0; side < 2; ++side) {
        const double end = side == 0 ? a : b;
        const double len = std::abs(mid - end);
        double outer = len;
        for (int k = 0; k < panels_per_side; ++k) {
            const double inner = (k + 1 == panels_per_side) ? 0.0 : outer * grading;
            const double lo = side == 0 ? end + inner : end - outer;
            const double hi = side == 0 ? end + outer : end - inner;
            sum += integrate_panel(f, lo, hi, order);
            outer = inner;
        }
    }
    return sum;
}

}  // namespace loggas
