#include "loggas/frank_wolfe.hpp"

#include <algorithm>
#include <cmath>

#include "loggas/errors.hpp"

namespace loggas {

RateReport minimize(const InteractionKernel& kernel, double kappa, double tolerance,
                    long max_iter) {
    std::vector<double> lin(kernel.U.size());
    for (std::size_t i = 0; i < lin.size(); ++i)
        lin[i] = std::isfinite(kernel.U[i]) ? kappa * kernel.U[i] : kPosInf;
    return detail::minimize_quadratic_simplex(kernel.K, lin, kernel.nodes, kernel.delta,
                                              kappa * kappa, tolerance, max_iter);
}

namespace {

// Vertex of the restricted polytope {w in simplex : g'w >= t}: either a single
// coordinate e_i with g_i >= t, or a two-coordinate point on the face g'w = t.
struct Vertex {
    int i = -1;
    int j = -1;       // -1 for a single-coordinate vertex
    double li = 1.0;  // mass on coordinate i

    bool operator==(const Vertex& o) const { return i == o.i && j == o.j; }
};

double vertex_dot(const Vertex& v, const std::vector<double>& c) {
    return v.j < 0 ? c[v.i] : v.li * c[v.i] + (1.0 - v.li) * c[v.j];
}

// Exact linear minimization over the polytope's vertices; lowest index wins ties.
Vertex linear_oracle(const std::vector<double>& c, const std::vector<double>& g, double t,
                     const std::vector<char>& active) {
    const int m = static_cast<int>(g.size());
    Vertex best;
    double best_val = kPosInf;
    for (int i = 0; i < m; ++i) {
        if (!active[i] || g[i] < t) continue;
        if (c[i] < best_val) {
            best_val = c[i];
            best = Vertex{i, -1, 1.0};
        }
    }
    for (int i = 0; i < m; ++i) {
        if (!active[i] || !(g[i] > t)) continue;
        for (int j = 0; j < m; ++j) {
            if (!active[j] || !(g[j] < t)) continue;
            const double li = (t - g[j]) / (g[i] - g[j]);
            const double val = li * c[i] + (1.0 - li) * c[j];
            if (val < best_val - 1e-15 * (1.0 + std::abs(val))) {
                best_val = val;
                best = Vertex{i, j, li};
            }
        }
    }
    return best;
}

}  // namespace

RateReport constrained_minimize(const InteractionKernel& kernel, double kappa,
                                const std::vector<double>& g, double t, double tolerance,
                                long max_iter) {
    const int m = kernel.size();
    if (g.size() != static_cast<std::size_t>(m))
        throw ContractError("constrained_minimize: g dimension mismatch");
    if (!(tolerance > 0.0)) throw ConfigError("constrained_minimize: tolerance must be > 0");
    if (max_iter <= 0) max_iter = 400L * m;
    const double quad = kappa * kappa;
    std::vector<double> lin(kernel.U.size());
    std::vector<char> active(m);
    bool feasible = false;
    for (int i = 0; i < m; ++i) {
        active[i] = std::isfinite(kernel.U[i]) ? 1 : 0;
        lin[i] = active[i] ? kappa * kernel.U[i] : kPosInf;
        if (active[i] && g[i] >= t) feasible = true;
    }
    if (!feasible) throw ConfigError("constrained_minimize: constraint infeasible on the grid");

    // an inactive constraint is settled by the unconstrained minimizer
    RateReport unconstrained = detail::minimize_quadratic_simplex(
        kernel.K, lin, kernel.nodes, kernel.delta, quad, tolerance, max_iter);
    double gdot = 0.0;
    for (int i = 0; i < m; ++i) gdot += g[i] * unconstrained.minimizer.weights[i];
    if (gdot >= t - 1e-12) return unconstrained;

    auto energy_of = [&](const std::vector<double>& ww) {
        double quad_term = 0.0, lin_term = 0.0;
        for (int i = 0; i < m; ++i) {
            if (ww[i] == 0.0) continue;
            lin_term += lin[i] * ww[i];
            double row = 0.0;
            for (int j = 0; j < m; ++j) row += kernel.k(i, j) * ww[j];
            quad_term += ww[i] * row;
        }
        return 0.5 * quad * quad_term + lin_term;
    };

    // away-step Frank-Wolfe with an explicit vertex decomposition
    std::vector<Vertex> verts;
    std::vector<double> alpha;
    {
        int start = -1;
        double best = kNegInf;
        for (int i = 0; i < m; ++i)
            if (active[i] && g[i] >= t && -lin[i] > best) {
                best = -lin[i];
                start = i;
            }
        verts.push_back(Vertex{start, -1, 1.0});
        alpha.push_back(1.0);
    }
    std::vector<double> w(m, 0.0), q(m, 0.0);
    w[verts[0].i] = 1.0;
    for (int j = 0; j < m; ++j) q[j] = kernel.k(verts[0].i, j);

    std::vector<double> grad(m), kv(m);
    double gap = kPosInf;
    long it = 0;
    double linw = lin[verts[0].i];
    double prev_energy = energy_of(w);
    for (; it < max_iter; ++it) {
        for (int i = 0; i < m; ++i) grad[i] = active[i] ? quad * q[i] + lin[i] : kPosInf;
        double gw = 0.0;
        for (int i = 0; i < m; ++i)
            if (w[i] != 0.0) gw += grad[i] * w[i];

        const Vertex vf = linear_oracle(grad, g, t, active);
        gap = gw - vertex_dot(vf, grad);
        if (gap <= tolerance) break;

        std::size_t away_idx = 0;
        double away_val = kNegInf;
        for (std::size_t k = 0; k < verts.size(); ++k) {
            const double val = vertex_dot(verts[k], grad);
            if (val > away_val) {
                away_val = val;
                away_idx = k;
            }
        }
        const double away_gap = away_val - gw;

        const bool use_away = away_gap > gap && verts.size() > 1;
        const Vertex v = use_away ? verts[away_idx] : vf;
        for (int j = 0; j < m; ++j)
            kv[j] = v.j < 0 ? kernel.k(v.i, j)
                            : v.li * kernel.k(v.i, j) + (1.0 - v.li) * kernel.k(v.j, j);
        const double vKv = v.j < 0 ? kernel.k(v.i, v.i)
                                   : v.li * v.li * kernel.k(v.i, v.i) +
                                         2.0 * v.li * (1.0 - v.li) * kernel.k(v.i, v.j) +
                                         (1.0 - v.li) * (1.0 - v.li) * kernel.k(v.j, v.j);
        const double vq = v.j < 0 ? q[v.i] : v.li * q[v.i] + (1.0 - v.li) * q[v.j];
        double wKw = 0.0;
        for (int i = 0; i < m; ++i) wKw += w[i] * q[i];
        const double dKd = vKv - 2.0 * vq + wKw;
        // line search along d = v - w (FW, grad.d = -gap) or d = w - v (away)
        const double gamma_max =
            use_away ? (alpha[away_idx] < 1.0 ? alpha[away_idx] / (1.0 - alpha[away_idx]) : 1.0)
                     : 1.0;
        const double descent = use_away ? away_gap : gap;
        const double gamma =
            (quad * dKd > 0.0) ? std::min(gamma_max, descent / (quad * dKd)) : gamma_max;
        if (gamma <= 0.0) break;

        const double sgn = use_away ? -gamma : gamma;
        const double scale = 1.0 - sgn;
        const double new_wKw = scale * scale * wKw + 2.0 * sgn * scale * vq + sgn * sgn * vKv;
        linw = scale * linw + sgn * vertex_dot(v, lin);
        for (int i = 0; i < m; ++i) w[i] *= scale;
        for (int i = 0; i < m; ++i) q[i] = scale * q[i] + sgn * kv[i];
        if (v.j < 0) {
            w[v.i] += sgn;
        } else {
            w[v.i] += sgn * v.li;
            w[v.j] += sgn * (1.0 - v.li);
        }
        for (double& a : alpha) a *= scale;
        if (use_away) {
            alpha[away_idx] -= gamma;
        } else {
            bool merged = false;
            for (std::size_t k = 0; k < verts.size(); ++k)
                if (verts[k] == v) {
                    alpha[k] += gamma;
                    merged = true;
                    break;
                }
            if (!merged) {
                verts.push_back(v);
                alpha.push_back(gamma);
            }
        }
        for (std::size_t k = 0; k < verts.size();) {
            if (alpha[k] < 1e-14) {
                verts.erase(verts.begin() + static_cast<long>(k));
                alpha.erase(alpha.begin() + static_cast<long>(k));
            } else {
                ++k;
            }
        }
        for (int i = 0; i < m; ++i)
            if (w[i] < 0.0 && w[i] > -1e-14) w[i] = 0.0;

        if ((it & 0x3FF) == 0x3FF) {
            // rebuild w and q from the decomposition to cancel drift
            double asum = 0.0;
            for (double a : alpha) asum += a;
            std::fill(w.begin(), w.end(), 0.0);
            for (std::size_t k = 0; k < verts.size(); ++k) {
                alpha[k] /= asum;
                if (verts[k].j < 0) {
                    w[verts[k].i] += alpha[k];
                } else {
                    w[verts[k].i] += alpha[k] * verts[k].li;
                    w[verts[k].j] += alpha[k] * (1.0 - verts[k].li);
                }
            }
            std::fill(q.begin(), q.end(), 0.0);
            linw = 0.0;
            for (int i = 0; i < m; ++i) {
                if (w[i] == 0.0) continue;
                linw += lin[i] * w[i];
                for (int j = 0; j < m; ++j) q[j] += w[i] * kernel.k(i, j);
            }
        }

        const double e = 0.5 * quad * new_wKw + linw;
        if (e > prev_energy + 1e-9 * (1.0 + std::abs(prev_energy)))
            throw NumericalError("constrained frank-wolfe: energy increased", e - prev_energy);
        prev_energy = e;
    }
    if (gap > tolerance)
        throw NumericalError("constrained frank-wolfe: iteration cap reached", gap);

    RateReport rep;
    rep.minimizer.nodes = kernel.nodes;
    rep.minimizer.delta = kernel.delta;
    rep.minimizer.weights = w;
    double sum = 0.0;
    for (double wi : w) sum += wi;
    for (double& wi : rep.minimizer.weights) wi /= sum;
    rep.minimizer.check_invariants();
    rep.energy_value = energy_of(rep.minimizer.weights);
    rep.c_constant = -rep.energy_value;
    rep.iterations = it;
    rep.final_duality_gap = gap;
    return rep;
}

}  // namespace loggas
