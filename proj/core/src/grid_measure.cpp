#include "loggas/grid_measure.hpp"

#include <cmath>

#include "loggas/errors.hpp"

namespace loggas {

GridMeasure GridMeasure::uniform(double a, double b, int m) {
    if (!(a < b) || m < 1) throw ConfigError("GridMeasure::uniform: need a < b and m >= 1");
    GridMeasure g;
    g.delta = (b - a) / m;
    g.nodes.resize(m);
    g.weights.assign(m, 1.0 / m);
    for (int i = 0; i < m; ++i) g.nodes[i] = a + (i + 0.5) * g.delta;
    return g;
}

void GridMeasure::check_invariants() const {
    if (nodes.size() != weights.size()) throw ContractError("GridMeasure: size mismatch");
    if (nodes.empty()) throw ContractError("GridMeasure: empty");
    double sum = 0.0;
    for (double w : weights) {
        if (w < -1e-12) throw ContractError("GridMeasure: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw ContractError("GridMeasure: weights do not sum to 1");
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double gap = nodes[i] - nodes[i - 1];
        if (!(gap > 0.0)) throw ContractError("GridMeasure: nodes not strictly increasing");
        if (std::abs(gap - delta) > 1e-12 * std::max(1.0, std::abs(delta)))
            throw ContractError("GridMeasure: nonuniform spacing");
    }
}

}  // namespace loggas
