#include "loggas/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "loggas/errors.hpp"

namespace loggas {

HermitianMatrix HermitianMatrix::zero(int d) {
    HermitianMatrix m;
    m.dim = d;
    m.a.assign(static_cast<std::size_t>(d) * d, Complex{0.0, 0.0});
    return m;
}

HermitianMatrix HermitianMatrix::identity(int d) {
    HermitianMatrix m = zero(d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& entries) {
    HermitianMatrix m = zero(static_cast<int>(entries.size()));
    for (int i = 0; i < m.dim; ++i) m.at(i, i) = entries[static_cast<std::size_t>(i)];
    return m;
}

double HermitianMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& v : a) s += std::norm(v);
    return std::sqrt(s);
}

double HermitianMatrix::hermiticity_defect() const {
    double d = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j <= i; ++j) d = std::max(d, std::abs(at(i, j) - std::conj(at(j, i))));
    return d;
}

double HermitianMatrix::trace_real() const {
    double t = 0.0;
    for (int i = 0; i < dim; ++i) t += at(i, i).real();
    return t;
}

std::vector<Complex> matmul(const std::vector<Complex>& a, const std::vector<Complex>& b, int d) {
    std::vector<Complex> c(static_cast<std::size_t>(d) * d, Complex{0.0, 0.0});
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            const Complex aik = a[static_cast<std::size_t>(i) * d + k];
            if (aik == Complex{0.0, 0.0}) continue;
            for (int j = 0; j < d; ++j)
                c[static_cast<std::size_t>(i) * d + j] += aik * b[static_cast<std::size_t>(k) * d + j];
        }
    return c;
}

namespace {

double offdiagonal_norm(const HermitianMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j)
            if (i != j) s += std::norm(m.at(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenSystem hermitian_eigensolve(const HermitianMatrix& m, int max_sweeps) {
    const int d = m.dim;
    if (d < 1 || m.a.size() != static_cast<std::size_t>(d) * d)
        throw ContractError("hermitian_eigensolve: malformed matrix");
    const double fro = m.frobenius_norm();
    if (m.hermiticity_defect() > 1e-10 * std::max(1.0, fro))
        throw ContractError("hermitian_eigensolve: matrix is not Hermitian");

    HermitianMatrix w = m;
    // symmetrize round-off so the iteration preserves hermiticity exactly
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < i; ++j) {
            const Complex avg = 0.5 * (w.at(i, j) + std::conj(w.at(j, i)));
            w.at(i, j) = avg;
            w.at(j, i) = std::conj(avg);
        }
        w.at(i, i) = Complex{w.at(i, i).real(), 0.0};
    }
    // v accumulates the rotations; row k ends up as the k-th eigenvector
    // only after the final transpose into the EigenSystem layout
    std::vector<Complex> v = HermitianMatrix::identity(d).a;

    const double target = 1e-12 * std::max(fro, 1e-300);
    const double rotate_floor = 1e-300;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (offdiagonal_norm(w) <= target) break;
        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) {
                const Complex b = w.at(p, q);
                const double r = std::abs(b);
                if (r <= rotate_floor) continue;
                const double app = w.at(p, p).real();
                const double aqq = w.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double hyp = std::sqrt(1.0 + tau * tau);
                // smaller-magnitude root of t^2 - 2 tau t - 1 = 0
                const double t = tau >= 0.0 ? -1.0 / (tau + hyp) : 1.0 / (hyp - tau);
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sg = t * c;
                const Complex phase = b / r;  // e^{i arg(b)}
                const Complex s = sg * std::conj(phase);

                w.at(p, p) = c * c * app + 2.0 * c * sg * r + sg * sg * aqq;
                w.at(q, q) = sg * sg * app - 2.0 * c * sg * r + c * c * aqq;
                w.at(p, q) = 0.0;
                w.at(q, p) = 0.0;
                for (int k = 0; k < d; ++k) {
                    if (k == p || k == q) continue;
                    const Complex wkp = w.at(k, p);
                    const Complex wkq = w.at(k, q);
                    w.at(k, p) = c * wkp + s * wkq;
                    w.at(k, q) = -std::conj(s) * wkp + c * wkq;
                    w.at(p, k) = std::conj(w.at(k, p));
                    w.at(q, k) = std::conj(w.at(k, q));
                }
                for (int k = 0; k < d; ++k) {
                    const Complex vkp = v[static_cast<std::size_t>(k) * d + p];
                    const Complex vkq = v[static_cast<std::size_t>(k) * d + q];
                    v[static_cast<std::size_t>(k) * d + p] = c * vkp + s * vkq;
                    v[static_cast<std::size_t>(k) * d + q] = -std::conj(s) * vkp + c * vkq;
                }
            }
    }
    const double off = offdiagonal_norm(w);
    if (off > target && sweep >= max_sweeps)
        throw NumericalError("hermitian_eigensolve: sweep cap reached", off);

    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return w.at(i, i).real() < w.at(j, j).real(); });

    EigenSystem es;
    es.dim = d;
    es.values.resize(static_cast<std::size_t>(d));
    es.vectors.resize(static_cast<std::size_t>(d) * d);
    for (int k = 0; k < d; ++k) {
        const int col = order[static_cast<std::size_t>(k)];
        es.values[static_cast<std::size_t>(k)] = w.at(col, col).real();
        for (int i = 0; i < d; ++i)
            es.vectors[static_cast<std::size_t>(k) * d + i] = v[static_cast<std::size_t>(i) * d + col];
    }

    // reconstruction residual |m - V diag(l) V^H|_F
    double resid = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Complex rec{0.0, 0.0};
            for (int k = 0; k < d; ++k)
                rec += es.values[static_cast<std::size_t>(k)] * es.vector_component(k, i) *
                       std::conj(es.vector_component(k, j));
            resid += std::norm(m.at(i, j) - rec);
        }
    resid = std::sqrt(resid);
    if (resid > 1e-9 * std::max(fro, 1e-300))
        throw NumericalError("hermitian_eigensolve: reconstruction residual too large", resid);
    return es;
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m) {
    return hermitian_eigensolve(m).values;
}

HermitianMatrix hermitian_sqrt(const HermitianMatrix& m) {
    const EigenSystem es = hermitian_eigensolve(m);
    const double scale = std::max(1.0, std::abs(es.values.back()));
    for (double l : es.values)
        if (l < -1e-10 * scale)
            throw NumericalError("hermitian_sqrt: matrix is not positive semidefinite", -l);
    HermitianMatrix s = HermitianMatrix::zero(m.dim);
    for (int k = 0; k < m.dim; ++k) {
        const double root = std::sqrt(std::max(0.0, es.values[static_cast<std::size_t>(k)]));
        if (root == 0.0) continue;
        for (int i = 0; i < m.dim; ++i)
            for (int j = 0; j < m.dim; ++j)
                s.at(i, j) += root * es.vector_component(k, i) * std::conj(es.vector_component(k, j));
    }
    return s;
}

}  // namespace loggas
