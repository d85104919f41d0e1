#pragma once

#include <limits>
#include <variant>
#include <vector>

namespace loggas {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// Limiting weight families. Each defines log w(x) on its natural domain.
// The finite-n weights of the scaled families collapse under the n-th power
// to the limiting expression, so the per-particle log-density factor is
// log w(x) itself (see Ensemble::log_weight).

/// log w(x) = alpha*log(x) - tau*x on (0, inf). Laguerre-type; the
/// disordered-boson field.
struct PowerExp {
    double alpha = 0.0;  // > -1
    double tau = 1.0;    // > 0
};

/// log w(x) = alpha*log|x| - x^2 on R. Hermite-type.
struct GaussPower {
    double alpha = 0.0;  // > -1
};

/// log w(x) = alpha*log(x) + beta*log(1-x) on [0, 1]. Jacobi-type.
struct JacobiPower {
    double alpha = 0.0;  // > -1
    double beta = 0.0;   // > -1
};

/// log w(x) = -c*(log x)^2 on (0, inf). Stieltjes-Wigert.
struct LogSquare {
    double c = 1.0;  // > 0
};

/// log w interpolated linearly between (nodes[i], values[i]); -inf outside
/// the node range. Nodes strictly increasing, values finite.
struct TablePotential {
    std::vector<double> nodes;
    std::vector<double> values;
};

using WeightFamily = std::variant<PowerExp, GaussPower, JacobiPower, LogSquare, TablePotential>;

/// Limiting log w(x); -inf at zeros of w and outside the family's domain.
double log_weight_value(const WeightFamily& w, double x);

/// Validates family parameters, throwing ConfigError on violation.
void validate_weight(const WeightFamily& w);

/// Finite set of zeros of the limiting weight inside its domain closure
/// (assumption: the set is finite for every supported family).
std::vector<double> weight_zeros(const WeightFamily& w);

/// Natural domain of the family as [lo, hi] (infinities allowed).
struct Interval {
    double lo = kNegInf;
    double hi = kPosInf;

    bool contains(double x) const { return x >= lo && x <= hi; }
    bool bounded() const { return lo > kNegInf && hi < kPosInf; }
};

Interval weight_domain(const WeightFamily& w);

}  // namespace loggas
