#include <algorithm>
#include <cmath>
#include <vector>

#include "loggas/errors.hpp"
#include "loggas/frank_wolfe.hpp"

// Away-step Frank-Wolfe over the probability simplex with an active-set
// polish: once FW has located the support, the equality-constrained KKT
// system on that support is solved directly, which removes the slow tail of
// the conditional-gradient convergence. The duality gap reported at exit is
// recomputed at the final iterate, so the certificate is unconditional.

namespace loggas::detail {

namespace {

// Gaussian elimination with partial pivoting; returns false on (near-)singular.
bool solve_dense(std::vector<double> a, std::vector<double> b, int n, std::vector<double>& out) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[static_cast<std::size_t>(r) * n + col]) >
                std::abs(a[static_cast<std::size_t>(piv) * n + col]))
                piv = r;
        if (std::abs(a[static_cast<std::size_t>(piv) * n + col]) < 1e-300) return false;
        if (piv != col) {
            for (int c = 0; c < n; ++c)
                std::swap(a[static_cast<std::size_t>(piv) * n + c],
                          a[static_cast<std::size_t>(col) * n + c]);
            std::swap(b[piv], b[col]);
        }
        const double d = a[static_cast<std::size_t>(col) * n + col];
        for (int r = col + 1; r < n; ++r) {
            const double f = a[static_cast<std::size_t>(r) * n + col] / d;
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c)
                a[static_cast<std::size_t>(r) * n + c] -= f * a[static_cast<std::size_t>(col) * n + c];
            b[r] -= f * b[col];
        }
    }
    out.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a[static_cast<std::size_t>(r) * n + c] * out[c];
        out[r] = s / a[static_cast<std::size_t>(r) * n + r];
    }
    return true;
}

struct Problem {
    const std::vector<double>& K;
    const std::vector<double>& lin;
    double quad;
    int m;
    std::vector<char> active;

    double k(int i, int j) const { return K[static_cast<std::size_t>(i) * m + j]; }

    double energy(const std::vector<double>& w) const {
        double q = 0.0, l = 0.0;
        for (int i = 0; i < m; ++i) {
            if (w[i] == 0.0) continue;
            l += lin[i] * w[i];
            double row = 0.0;
            const double* kr = K.data() + static_cast<std::size_t>(i) * m;
            for (int j = 0; j < m; ++j) row += kr[j] * w[j];
            q += w[i] * row;
        }
        return 0.5 * quad * q + l;
    }

    void gradient(const std::vector<double>& w, std::vector<double>& g) const {
        g.assign(m, kPosInf);
        std::vector<double> q(m, 0.0);
        for (int i = 0; i < m; ++i) {
            if (w[i] == 0.0) continue;
            const double* kr = K.data() + static_cast<std::size_t>(i) * m;
            for (int j = 0; j < m; ++j) q[j] += w[i] * kr[j];
        }
        for (int i = 0; i < m; ++i)
            if (active[i]) g[i] = quad * q[i] + lin[i];
    }

    double duality_gap(const std::vector<double>& w) const {
        std::vector<double> g;
        gradient(w, g);
        double gw = 0.0, gmin = kPosInf;
        for (int i = 0; i < m; ++i) {
            if (!active[i]) continue;
            if (w[i] != 0.0) gw += g[i] * w[i];
            gmin = std::min(gmin, g[i]);
        }
        return gw - gmin;
    }
};

// One chunk of away-step FW with incrementally maintained q = Kw.
// Returns the FW iteration count consumed.
long away_fw_chunk(const Problem& pb, std::vector<double>& w, double tolerance, long budget,
                   double& gap_out) {
    const int m = pb.m;
    std::vector<double> q(m, 0.0);
    double wKw = 0.0, linw = 0.0;
    for (int i = 0; i < m; ++i) {
        if (w[i] == 0.0) continue;
        linw += pb.lin[i] * w[i];
        const double* kr = pb.K.data() + static_cast<std::size_t>(i) * m;
        for (int j = 0; j < m; ++j) q[j] += w[i] * kr[j];
    }
    for (int i = 0; i < m; ++i) wKw += w[i] * q[i];

    double prev_energy = 0.5 * pb.quad * wKw + linw;
    long it = 0;
    for (; it < budget; ++it) {
        int s = -1, a = -1;
        double gs = kPosInf, ga = kNegInf;
        const double gw = pb.quad * wKw + linw;
        for (int i = 0; i < m; ++i) {
            if (!pb.active[i]) continue;
            const double gi = pb.quad * q[i] + pb.lin[i];
            if (gi < gs) {
                gs = gi;
                s = i;
            }
            if (w[i] > 0.0 && gi > ga) {
                ga = gi;
                a = i;
            }
        }
        gap_out = gw - gs;
        if (gap_out <= tolerance) break;
        const double away_gap = ga - gw;

        const bool use_away = away_gap > gap_out && w[a] < 1.0;
        const int idx = use_away ? a : s;
        const double kd = pb.k(idx, idx);
        double dKd, descent, gamma_max;
        if (use_away) {
            dKd = wKw - 2.0 * q[idx] + kd;
            descent = away_gap;
            gamma_max = w[idx] / (1.0 - w[idx]);
        } else {
            dKd = kd - 2.0 * q[idx] + wKw;
            descent = gap_out;
            gamma_max = 1.0;
        }
        const double gamma =
            (pb.quad * dKd > 0.0) ? std::min(gamma_max, descent / (pb.quad * dKd)) : gamma_max;
        if (gamma <= 0.0) break;

        const double sgn = use_away ? -gamma : gamma;
        const double scale = 1.0 - sgn;
        wKw = scale * scale * wKw + 2.0 * sgn * scale * q[idx] + sgn * sgn * kd;
        linw = scale * linw + sgn * pb.lin[idx];
        const double* col = pb.K.data() + static_cast<std::size_t>(idx) * m;
        for (int j = 0; j < m; ++j) q[j] = scale * q[j] + sgn * col[j];
        for (int j = 0; j < m; ++j) w[j] *= scale;
        w[idx] += sgn;
        if (use_away && (gamma >= gamma_max || w[idx] < 1e-16)) w[idx] = 0.0;

        const double e = 0.5 * pb.quad * wKw + linw;
        if (e > prev_energy + 1e-9 * (1.0 + std::abs(prev_energy)))
            throw NumericalError("frank-wolfe: energy increased", e - prev_energy);
        prev_energy = e;
    }
    // clear rounding dust and renormalize the mass exactly
    double sum = 0.0;
    for (double& wi : w) {
        if (wi < 0.0) wi = 0.0;
        sum += wi;
    }
    for (double& wi : w) wi /= sum;
    return it;
}

// Active-set KKT refinement on the support identified by FW. Returns true and
// overwrites w when a strictly feasible refinement was found.
bool polish(const Problem& pb, std::vector<double>& w) {
    const int m = pb.m;
    std::vector<int> support;
    for (int i = 0; i < m; ++i)
        if (pb.active[i] && w[i] > 1e-12) support.push_back(i);
    if (support.empty() || static_cast<int>(support.size()) > 2000) return false;

    std::vector<double> g;
    for (int round = 0; round < 200; ++round) {
        const int ns = static_cast<int>(support.size());
        // bordered system: [quad*K_SS, 1; 1', 0] [w_S; mu] = [-lin_S; 1]
        std::vector<double> A(static_cast<std::size_t>(ns + 1) * (ns + 1), 0.0);
        std::vector<double> b(ns + 1, 0.0);
        for (int r = 0; r < ns; ++r) {
            for (int c = 0; c < ns; ++c)
                A[static_cast<std::size_t>(r) * (ns + 1) + c] =
                    pb.quad * pb.k(support[r], support[c]);
            A[static_cast<std::size_t>(r) * (ns + 1) + ns] = 1.0;
            A[static_cast<std::size_t>(ns) * (ns + 1) + r] = 1.0;
            b[r] = -pb.lin[support[r]];
        }
        b[ns] = 1.0;
        std::vector<double> sol;
        if (!solve_dense(A, b, ns + 1, sol)) return false;

        int worst = -1;
        double worst_val = -1e-14;
        for (int r = 0; r < ns; ++r)
            if (sol[r] < worst_val) {
                worst_val = sol[r];
                worst = r;
            }
        if (worst >= 0) {
            support.erase(support.begin() + worst);
            if (support.empty()) return false;
            continue;
        }

        std::vector<double> cand(m, 0.0);
        for (int r = 0; r < ns; ++r) cand[support[r]] = std::max(0.0, sol[r]);
        double sum = 0.0;
        for (double v : cand) sum += v;
        for (double& v : cand) v /= sum;

        // KKT check for excluded coordinates: gradient must not dip below the
        // multiplier; add the worst violator and re-solve
        pb.gradient(cand, g);
        const double mu = sol[ns];
        int add = -1;
        double add_val = -1e-10 * (1.0 + std::abs(mu));
        for (int i = 0; i < m; ++i) {
            if (!pb.active[i] || cand[i] > 0.0) continue;
            if (g[i] - mu < add_val) {
                add_val = g[i] - mu;
                add = i;
            }
        }
        if (add >= 0) {
            support.insert(std::lower_bound(support.begin(), support.end(), add), add);
            continue;
        }
        if (pb.energy(cand) <= pb.energy(w) + 1e-12 * (1.0 + std::abs(pb.energy(w)))) {
            w = std::move(cand);
            return true;
        }
        return false;
    }
    return false;
}

}  // namespace

RateReport minimize_quadratic_simplex(const std::vector<double>& K, const std::vector<double>& lin,
                                      const std::vector<double>& nodes, double delta, double quad,
                                      double tolerance, long max_iter) {
    const int m = static_cast<int>(nodes.size());
    if (static_cast<std::size_t>(m) * m != K.size() || lin.size() != static_cast<std::size_t>(m))
        throw ContractError("minimize_quadratic_simplex: dimension mismatch");
    if (!(tolerance > 0.0)) throw ConfigError("minimize_quadratic_simplex: tolerance must be > 0");
    if (max_iter <= 0) max_iter = 200L * m;

    Problem pb{K, lin, quad, m, {}};
    pb.active.assign(m, 0);
    int n_active = 0;
    for (int i = 0; i < m; ++i) {
        pb.active[i] = std::isfinite(lin[i]) ? 1 : 0;
        n_active += pb.active[i];
    }
    if (n_active == 0) throw ConfigError("minimize_quadratic_simplex: every node excluded");

    std::vector<double> w(m, 0.0);
    for (int i = 0; i < m; ++i)
        if (pb.active[i]) w[i] = 1.0 / n_active;

    long used = 0;
    double gap = kPosInf;
    while (true) {
        const long chunk = std::min<long>(4096, max_iter - used);
        const long consumed = away_fw_chunk(pb, w, tolerance, chunk, gap);
        used += consumed;
        const bool polished = polish(pb, w);
        gap = pb.duality_gap(w);
        if (gap <= tolerance) break;
        if (used >= max_iter)
            throw NumericalError("frank-wolfe: iteration cap reached before the gap tolerance",
                                 gap);
        if (consumed == 0 && !polished)
            throw NumericalError("frank-wolfe: stalled before the gap tolerance", gap);
    }

    RateReport rep;
    rep.minimizer.nodes = nodes;
    rep.minimizer.delta = delta;
    rep.minimizer.weights = w;
    rep.minimizer.check_invariants();
    rep.energy_value = pb.energy(w);
    rep.c_constant = -rep.energy_value;
    rep.iterations = used;
    rep.final_duality_gap = gap;
    return rep;
}

}  // namespace loggas::detail
