#pragma once

#include <complex>
#include <vector>

namespace loggas {

using Complex = std::complex<double>;

/// Dense complex matrix in row-major storage, used for Hermitian linear
/// algebra at desk scale (dim <= 256).
struct HermitianMatrix {
    int dim = 0;
    std::vector<Complex> a;  // dim*dim, row-major

    Complex& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
    const Complex& at(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }

    static HermitianMatrix zero(int d);
    static HermitianMatrix identity(int d);
    static HermitianMatrix diagonal(const std::vector<double>& entries);

    double frobenius_norm() const;
    /// max_ij |a_ij - conj(a_ji)|; zero for exactly Hermitian storage.
    double hermiticity_defect() const;
    double trace_real() const;
};

/// c = a * b for square row-major complex matrices of dimension d.
std::vector<Complex> matmul(const std::vector<Complex>& a, const std::vector<Complex>& b, int d);

/// Eigenvalues ascending; vectors[k*dim + i] is component i of the k-th
/// eigenvector (eigenvectors stored as rows for cache-friendly access).
struct EigenSystem {
    int dim = 0;
    std::vector<double> values;
    std::vector<Complex> vectors;

    Complex vector_component(int k, int i) const {
        return vectors[static_cast<std::size_t>(k) * dim + i];
    }
};

/// Cyclic complex Jacobi rotations. Postconditions (checked):
/// reconstruction residual |m - V diag(l) V^H|_F <= 1e-9 |m|_F.
/// Throws NumericalError with the off-diagonal norm when the sweep cap is
/// reached, ContractError when m is not Hermitian within 1e-10 |m|_F.
EigenSystem hermitian_eigensolve(const HermitianMatrix& m, int max_sweeps = 64);

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m);

/// Principal square root of a positive-semidefinite Hermitian matrix via its
/// eigendecomposition. Eigenvalues below -1e-10 raise NumericalError; small
/// negative round-off is clamped to zero.
HermitianMatrix hermitian_sqrt(const HermitianMatrix& m);

}  // namespace loggas
