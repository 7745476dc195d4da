// numerics.cpp — implementation of the dense linear-algebra kernel
#include "polab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace polab {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

double off_diagonal_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& z : data_) m = std::max(m, std::abs(z));
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    require(cols_ == rhs.rows_, "ComplexMatrix: size mismatch in product");
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    return out;
}

ComplexVector ComplexMatrix::operator*(const ComplexVector& v) const {
    require(cols_ == v.size(), "ComplexMatrix: size mismatch in matrix-vector product");
    ComplexVector out(rows_, cplx{});
    for (std::size_t i = 0; i < rows_; ++i) {
        cplx s{};
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "ComplexMatrix: size mismatch in sum");
    ComplexMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "ComplexMatrix: size mismatch in difference");
    ComplexMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "ComplexMatrix: size mismatch in sum");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix ComplexMatrix::scaled(cplx factor) const {
    ComplexMatrix out = *this;
    for (cplx& z : out.data_) z *= factor;
    return out;
}

ComplexVector ComplexMatrix::column(std::size_t j) const {
    ComplexVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void ComplexMatrix::set_column(std::size_t j, const ComplexVector& v) {
    require(v.size() == rows_, "ComplexMatrix: column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Eigensystem hermitian_eigendecompose(const ComplexMatrix& m) {
    require(m.rows() == m.cols() && m.rows() > 0, "hermitian_eigendecompose: matrix must be square and non-empty");
    const std::size_t n = m.rows();
    const double scale = m.max_abs();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cplx z = m(i, j);
            require(std::isfinite(z.real()) && std::isfinite(z.imag()),
                    "hermitian_eigendecompose: non-finite entry");
            if (std::abs(z - std::conj(m(j, i))) > 1e-12 * std::max(scale, 1e-300)) {
                std::ostringstream msg;
                msg << "hermitian_eigendecompose: matrix is not Hermitian at entries (" << i << ", " << j
                    << ") vs (" << j << ", " << i << ")";
                throw std::invalid_argument(msg.str());
            }
        }

    // Work on an exactly-Hermitian copy so roundoff in the input cannot leak
    // imaginary parts into the eigenvalues.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double fro = a.frobenius_norm();
    const double target = 1e-13 * fro;

    constexpr int kMaxSweeps = 64;
    int sweep = 0;
    while (off_diagonal_frobenius(a) > target && sweep++ < kMaxSweeps) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double g = std::abs(apq);
                if (g == 0.0) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double phi = std::arg(apq);

                // Real Jacobi angle for the phase-stripped 2x2 block, choosing
                // the smaller rotation (|t| <= 1) for guaranteed convergence.
                const double tau = (app - aqq) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // U restricted to (p,q): [[c, -s], [s e^{-i phi}, c e^{-i phi}]]
                const cplx upp = c;
                const cplx upq = -s;
                const cplx uqp = s * std::exp(cplx(0.0, -phi));
                const cplx uqq = c * std::exp(cplx(0.0, -phi));

                // A <- U† A U, applied as column then row updates.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
            }
        }
    }
    if (off_diagonal_frobenius(a) > target)
        throw std::runtime_error("hermitian_eigendecompose: Jacobi sweeps failed to converge");

    // Sort ascending.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    Eigensystem es;
    es.values.resize(n);
    es.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        es.vectors.set_column(k, v.column(order[k]));
    }

    // Re-orthonormalize within (near-)degenerate clusters.
    std::size_t lo = 0;
    while (lo < n) {
        std::size_t hi = lo + 1;
        while (hi < n && es.values[hi] - es.values[hi - 1] < 1e-9) ++hi;
        if (hi - lo > 1) {
            for (std::size_t j = lo; j < hi; ++j) {
                ComplexVector col = es.vectors.column(j);
                for (std::size_t k = lo; k < j; ++k) {
                    const ComplexVector prev = es.vectors.column(k);
                    const cplx proj = inner(prev, col);
                    for (std::size_t i = 0; i < n; ++i) col[i] -= proj * prev[i];
                }
                const double nrm = norm(col);
                if (nrm < 1e-12)
                    throw std::runtime_error("hermitian_eigendecompose: degenerate cluster collapsed");
                for (cplx& z : col) z /= nrm;
                es.vectors.set_column(j, col);
            }
        }
        lo = hi;
    }

    // Phase fix: largest-modulus entry of each column real and positive.
    for (std::size_t j = 0; j < n; ++j) {
        ComplexVector col = es.vectors.column(j);
        std::size_t imax = 0;
        double amax = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(col[i]) > amax) { amax = std::abs(col[i]); imax = i; }
        const cplx rot = std::exp(cplx(0.0, -std::arg(col[imax])));
        for (cplx& z : col) z *= rot;
        col[imax] = cplx(std::abs(col[imax]), 0.0);
        es.vectors.set_column(j, col);
    }
    return es;
}

ComplexVector solve_linear(const ComplexMatrix& a, const ComplexVector& b) {
    require(a.rows() == a.cols() && a.rows() > 0, "solve_linear: matrix must be square and non-empty");
    require(a.rows() == b.size(), "solve_linear: right-hand side length mismatch");
    const std::size_t n = a.rows();

    ComplexMatrix lu = a;
    ComplexVector x = b;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    double min_pivot = std::numeric_limits<double>::infinity();
    double max_pivot = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > best) { best = std::abs(lu(i, k)); piv = i; }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            std::swap(x[k], x[piv]);
        }
        const double pm = std::abs(lu(k, k));
        min_pivot = std::min(min_pivot, pm);
        max_pivot = std::max(max_pivot, pm);
        if (pm == 0.0 || pm < 1e-12 * max_pivot) {
            std::ostringstream msg;
            msg << "solve_linear: matrix is singular or near-singular (pivot magnitude " << pm << ")";
            throw std::runtime_error(msg.str());
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = lu(i, k) / lu(k, k);
            lu(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            x[i] -= f * x[k];
        }
    }
    for (std::size_t ri = n; ri-- > 0;) {
        cplx s = x[ri];
        for (std::size_t j = ri + 1; j < n; ++j) s -= lu(ri, j) * x[j];
        x[ri] = s / lu(ri, ri);
    }
    return x;
}

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

ComplexVector vectorize_columns(const ComplexMatrix& m) {
    ComplexVector v(m.rows() * m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) v[j * m.rows() + i] = m(i, j);
    return v;
}

ComplexMatrix devectorize_columns(const ComplexVector& v, std::size_t rows, std::size_t cols) {
    if (v.size() != rows * cols)
        throw std::invalid_argument("devectorize_columns: length does not match shape");
    ComplexMatrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = v[j * rows + i];
    return m;
}

double norm(const ComplexVector& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

cplx inner(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("inner: length mismatch");
    cplx s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

}  // namespace polab
