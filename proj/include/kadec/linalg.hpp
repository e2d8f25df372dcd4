#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace kadec::linalg {

using cdouble = std::complex<double>;

// Dense row-major complex matrix with just the surface the frame and
// atomic-decomposition computations need.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cdouble& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const {
        return a_[i * cols_ + j];
    }

    const std::vector<cdouble>& data() const { return a_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> a_;
};

Matrix adjoint(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<cdouble> apply(const Matrix& m, const std::vector<cdouble>& x);

double max_abs(const Matrix& m);
double frobenius_norm(const Matrix& m);
// max_ij |a_ij - conj(a_ji)| over a square matrix
double hermitian_defect(const Matrix& m);

// All eigenvalues of a Hermitian matrix, ascending. Householder reduction to
// tridiagonal form followed by implicit-shift QL. Complex input is handled
// through the real symmetric embedding [[X, -Y], [Y, X]] of A = X + iY,
// whose spectrum is that of A doubled. The matrix is symmetrized from its
// lower triangle; callers own any Hermitian-defect tolerance policy.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

// Real symmetric core (row-major, length n*n), exposed for the embedding
// path and for tests.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n);

// Singular values, descending; computed from the eigenvalues of the smaller
// Gram factor.
std::vector<double> singular_values(const Matrix& m);

// Solve H X = B for Hermitian positive definite H via Cholesky.
Matrix solve_hpd(const Matrix& h, const Matrix& b);

namespace reference {

// Cyclic Jacobi with unitary two-sided rotations; serial. Kept as an
// algorithmically independent check of the Householder/QL path.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

} // namespace reference

} // namespace kadec::linalg
