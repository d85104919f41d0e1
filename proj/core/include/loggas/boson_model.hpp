#pragma once

#include <cstdint>
#include <vector>

#include "loggas/hermitian.hpp"

namespace loggas {

/// Overall frequency scale fixed by calibration: chosen so that pooled
/// frequency histograms at growing n converge to the limiting density with
/// edge 3*sqrt(3). Empirical constant, not derived: with E|C_ij|^2 = 1/(2n)
/// the pooled mean frequency measured at n in {16,32,64} is 0.75 = half the
/// limit-law mean of 1.5, so the scale is 2.
inline constexpr double kBosonFrequencyScale = 2.0;

/// One draw of the disordered-boson matrix model.
struct BosonMatrixDraw {
    int n = 0;       // half-dimension: h is 2n x 2n
    int alpha = 0;   // rectangularity offset of the Gaussian factor
    std::uint64_t seed = 0;
    std::vector<double> frequencies;  // n nonnegative reals, ascending
};

/// h = C C^H with C a 2n x (2n+alpha) complex Gaussian matrix,
/// E|C_ij|^2 = 1/(2n) (so E tr h = 2n + alpha).
HermitianMatrix sample_wishart(int n, int alpha, std::uint64_t seed);

/// The n nonnegative eigenvalues of i h^{1/2} J h^{1/2}, ascending, where J
/// is the standard symplectic form on dimension 2n. The full spectrum is
/// symmetric about zero; only the nonnegative half is returned.
/// Throws ContractError on odd dimension, NumericalError when h fails
/// positive semidefiniteness beyond -1e-10.
std::vector<double> characteristic_frequencies(const HermitianMatrix& h);

struct BosonBatch {
    int n = 0;
    int alpha = 0;
    double frequency_scale = kBosonFrequencyScale;
    std::uint64_t seed = 0;  // master seed; draw k uses substream (seed, k)
    std::vector<BosonMatrixDraw> draws;
};

/// Independent draws with per-draw RNG substreams; frequencies are multiplied
/// by frequency_scale.
BosonBatch sample_boson_batch(int n, int alpha, int draw_count, std::uint64_t seed,
                              double frequency_scale = kBosonFrequencyScale);

/// All frequencies of a batch pooled and sorted ascending.
std::vector<double> pooled_frequencies(const BosonBatch& batch);

}  // namespace loggas
