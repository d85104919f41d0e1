#include "loggas/weight.hpp"

#include <algorithm>
#include <cmath>

#include "loggas/errors.hpp"

namespace loggas {

namespace {

struct LogWeightVisitor {
    double x;

    double operator()(const PowerExp& f) const {
        if (x < 0.0) return kNegInf;
        if (x == 0.0) return f.alpha > 0.0 ? kNegInf : (f.alpha == 0.0 ? 0.0 : kPosInf);
        return f.alpha * std::log(x) - f.tau * x;
    }
    double operator()(const GaussPower& f) const {
        if (x == 0.0) return f.alpha > 0.0 ? kNegInf : (f.alpha == 0.0 ? 0.0 : kPosInf);
        return f.alpha * std::log(std::abs(x)) - x * x;
    }
    double operator()(const JacobiPower& f) const {
        if (x < 0.0 || x > 1.0) return kNegInf;
        double v = 0.0;
        if (f.alpha != 0.0) {
            if (x == 0.0) return f.alpha > 0.0 ? kNegInf : kPosInf;
            v += f.alpha * std::log(x);
        }
        if (f.beta != 0.0) {
            if (x == 1.0) return f.beta > 0.0 ? kNegInf : kPosInf;
            v += f.beta * std::log(1.0 - x);
        }
        return v;
    }
    double operator()(const LogSquare& f) const {
        if (x <= 0.0) return kNegInf;
        const double lx = std::log(x);
        return -f.c * lx * lx;
    }
    double operator()(const TablePotential& f) const {
        if (f.nodes.empty() || x < f.nodes.front() || x > f.nodes.back()) return kNegInf;
        auto it = std::upper_bound(f.nodes.begin(), f.nodes.end(), x);
        if (it == f.nodes.begin()) return f.values.front();
        if (it == f.nodes.end()) return f.values.back();
        const std::size_t j = static_cast<std::size_t>(it - f.nodes.begin());
        const double x0 = f.nodes[j - 1], x1 = f.nodes[j];
        const double t = (x - x0) / (x1 - x0);
        return (1.0 - t) * f.values[j - 1] + t * f.values[j];
    }
};

}  // namespace

double log_weight_value(const WeightFamily& w, double x) {
    return std::visit(LogWeightVisitor{x}, w);
}

void validate_weight(const WeightFamily& w) {
    std::visit(
        [](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerExp>) {
                if (f.alpha <= -1.0) throw ConfigError("PowerExp: alpha must exceed -1");
                if (f.tau <= 0.0) throw ConfigError("PowerExp: tau must be positive");
            } else if constexpr (std::is_same_v<T, GaussPower>) {
                if (f.alpha <= -1.0) throw ConfigError("GaussPower: alpha must exceed -1");
            } else if constexpr (std::is_same_v<T, JacobiPower>) {
                if (f.alpha <= -1.0) throw ConfigError("JacobiPower: alpha must exceed -1");
                if (f.beta <= -1.0) throw ConfigError("JacobiPower: beta must exceed -1");
            } else if constexpr (std::is_same_v<T, LogSquare>) {
                if (f.c <= 0.0) throw ConfigError("LogSquare: c must be positive");
            } else if constexpr (std::is_same_v<T, TablePotential>) {
                if (f.nodes.size() < 2) throw ConfigError("TablePotential: need at least 2 nodes");
                if (f.nodes.size() != f.values.size())
                    throw ConfigError("TablePotential: nodes/values size mismatch");
                for (std::size_t i = 1; i < f.nodes.size(); ++i)
                    if (!(f.nodes[i] > f.nodes[i - 1]))
                        throw ConfigError("TablePotential: nodes must be strictly increasing");
                for (double v : f.values)
                    if (!std::isfinite(v)) throw ConfigError("TablePotential: values must be finite");
            }
        },
        w);
}

std::vector<double> weight_zeros(const WeightFamily& w) {
    return std::visit(
        [](const auto& f) -> std::vector<double> {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerExp>) {
                if (f.alpha > 0.0) return {0.0};
            } else if constexpr (std::is_same_v<T, GaussPower>) {
                if (f.alpha > 0.0) return {0.0};
            } else if constexpr (std::is_same_v<T, JacobiPower>) {
                std::vector<double> z;
                if (f.alpha > 0.0) z.push_back(0.0);
                if (f.beta > 0.0) z.push_back(1.0);
                return z;
            }
            return {};
        },
        w);
}

Interval weight_domain(const WeightFamily& w) {
    return std::visit(
        [](const auto& f) -> Interval {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerExp> || std::is_same_v<T, LogSquare>) {
                return {0.0, kPosInf};
            } else if constexpr (std::is_same_v<T, GaussPower>) {
                return {kNegInf, kPosInf};
            } else if constexpr (std::is_same_v<T, JacobiPower>) {
                return {0.0, 1.0};
            } else {
                return {f.nodes.front(), f.nodes.back()};
            }
        },
        w);
}

}  // namespace loggas
