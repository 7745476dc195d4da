// numerics.hpp — dense complex matrices, Hermitian eigensolver, LU solves, Kronecker products
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace polab {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/// Dense row-major complex matrix. Small and value-semantic on purpose:
/// every matrix in this project is at most a few hundred entries.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    ComplexMatrix adjoint() const;
    double frobenius_norm() const;
    double max_abs() const;

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexVector operator*(const ComplexVector& v) const;
    ComplexMatrix operator+(const ComplexMatrix& rhs) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;
    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix scaled(cplx factor) const;

    /// Column j as a vector.
    ComplexVector column(std::size_t j) const;
    void set_column(std::size_t j, const ComplexVector& v);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

/// Result of a Hermitian eigendecomposition: eigenvalues ascending, matching
/// orthonormal eigenvector columns, each column phase-fixed so that its
/// largest-modulus entry is real and positive.
struct Eigensystem {
    std::vector<double> values;
    ComplexMatrix vectors;
};

/// Cyclic-Jacobi eigendecomposition of a Hermitian matrix.
///
/// Validates hermiticity to 1e-12 * max|M| entrywise (the error message names
/// the offending entry pair), sweeps two-sided rotations until the
/// off-diagonal Frobenius norm falls below 1e-13 * ||M||_F, sorts eigenvalues
/// ascending, re-orthonormalizes eigenvector clusters whose eigenvalue gap is
/// below 1e-9 (Gram-Schmidt), and applies the phase fix described above.
Eigensystem hermitian_eigendecompose(const ComplexMatrix& m);

/// Solves A x = b by partial-pivot LU. Throws if A is singular or
/// near-singular (pivot-magnitude ratio worse than 1e-12); the message
/// carries the offending pivot magnitude.
ComplexVector solve_linear(const ComplexMatrix& a, const ComplexVector& b);

/// Kronecker product: (a ⊗ b) of shape (ra*rb) x (ca*cb).
ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column-major vectorization: v[j*rows + i] = m(i, j), and its inverse.
/// With this stacking, vec(A·rho·B) = (Bᵀ ⊗ A)·vec(rho).
ComplexVector vectorize_columns(const ComplexMatrix& m);
ComplexMatrix devectorize_columns(const ComplexVector& v, std::size_t rows, std::size_t cols);

/// Euclidean norm and inner product <a|b> (conjugate-linear in the first slot).
double norm(const ComplexVector& v);
cplx inner(const ComplexVector& a, const ComplexVector& b);

}  // namespace polab
