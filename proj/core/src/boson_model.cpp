#include "loggas/boson_model.hpp"

#include <algorithm>
#include <cmath>

#include "loggas/errors.hpp"
#include "loggas/rng.hpp"

namespace loggas {

HermitianMatrix sample_wishart(int n, int alpha, std::uint64_t seed) {
    if (n < 1) throw ConfigError("sample_wishart: n must be positive");
    if (alpha < 0) throw ConfigError("sample_wishart: alpha must be nonnegative");
    const int rows = 2 * n;
    const int cols = 2 * n + alpha;
    Rng rng(seed);
    // per-component std dev so that E|C_ij|^2 = 1/(2n)
    const double sd = 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));
    std::vector<Complex> c(static_cast<std::size_t>(rows) * cols);
    for (auto& z : c) {
        const double re = sd * rng.normal();
        const double im = sd * rng.normal();
        z = Complex{re, im};
    }
    HermitianMatrix h = HermitianMatrix::zero(rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j <= i; ++j) {
            Complex s{0.0, 0.0};
            for (int k = 0; k < cols; ++k)
                s += c[static_cast<std::size_t>(i) * cols + k] *
                     std::conj(c[static_cast<std::size_t>(j) * cols + k]);
            h.at(i, j) = s;
            h.at(j, i) = std::conj(s);
        }
    for (int i = 0; i < rows; ++i) h.at(i, i) = Complex{h.at(i, i).real(), 0.0};
    return h;
}

std::vector<double> characteristic_frequencies(const HermitianMatrix& h) {
    if (h.dim < 2 || h.dim % 2 != 0)
        throw ContractError("characteristic_frequencies: dimension must be even");
    const int d = h.dim;
    const int n = d / 2;

    const HermitianMatrix s = hermitian_sqrt(h);  // PSD check happens here

    // J = [[0, I], [-I, 0]]; form M = i * S J S, Hermitian since (SJS)^H = -SJS
    std::vector<Complex> j(static_cast<std::size_t>(d) * d, Complex{0.0, 0.0});
    for (int k = 0; k < n; ++k) {
        j[static_cast<std::size_t>(k) * d + (n + k)] = 1.0;
        j[static_cast<std::size_t>(n + k) * d + k] = -1.0;
    }
    const std::vector<Complex> sjs = matmul(matmul(s.a, j, d), s.a, d);
    HermitianMatrix m = HermitianMatrix::zero(d);
    const Complex iu{0.0, 1.0};
    for (std::size_t t = 0; t < sjs.size(); ++t) m.a[t] = iu * sjs[t];
    // clean round-off hermiticity defect before the solve
    for (int p = 0; p < d; ++p) {
        for (int q = 0; q < p; ++q) {
            const Complex avg = 0.5 * (m.at(p, q) + std::conj(m.at(q, p)));
            m.at(p, q) = avg;
            m.at(q, p) = std::conj(avg);
        }
        m.at(p, p) = Complex{m.at(p, p).real(), 0.0};
    }

    const std::vector<double> all = hermitian_eigenvalues(m);
    // spectrum is symmetric about 0: the top n values are the frequencies
    std::vector<double> freq(all.end() - n, all.end());
    for (double& f : freq) f = std::max(0.0, f);
    return freq;
}

BosonBatch sample_boson_batch(int n, int alpha, int draw_count, std::uint64_t seed,
                              double frequency_scale) {
    if (draw_count < 1) throw ConfigError("sample_boson_batch: draw_count must be positive");
    if (!(frequency_scale > 0.0))
        throw ConfigError("sample_boson_batch: frequency_scale must be positive");
    BosonBatch batch;
    batch.n = n;
    batch.alpha = alpha;
    batch.frequency_scale = frequency_scale;
    batch.seed = seed;
    batch.draws.reserve(static_cast<std::size_t>(draw_count));
    for (int k = 0; k < draw_count; ++k) {
        // distinct per-draw seed so draws are independent and parallelizable
        const std::uint64_t draw_seed =
            seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(k) * 0xd1342543de82ef95ULL + 1ULL;
        BosonMatrixDraw draw;
        draw.n = n;
        draw.alpha = alpha;
        draw.seed = draw_seed;
        draw.frequencies = characteristic_frequencies(sample_wishart(n, alpha, draw_seed));
        for (double& f : draw.frequencies) f *= frequency_scale;
        batch.draws.push_back(std::move(draw));
    }
    return batch;
}

std::vector<double> pooled_frequencies(const BosonBatch& batch) {
    std::vector<double> all;
    for (const auto& d : batch.draws)
        all.insert(all.end(), d.frequencies.begin(), d.frequencies.end());
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace loggas
