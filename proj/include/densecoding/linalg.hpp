#pragma once

#include "densecoding/types.hpp"

namespace densecoding {

/// Eigendecomposition of a Hermitian matrix: a = V diag(w) V^dagger with
/// eigenvalues in descending order and eigenvectors as matching columns.
struct HermitianEig {
    RVector eigenvalues;
    CMatrix eigenvectors;
};

/// Singular value decomposition a = u diag(s) v^dagger with s descending
/// and nonnegative; u and v are unitary.
struct Svd {
    CMatrix u;
    RVector singular_values;
    CMatrix v;
};

/// Matrix product. Throws std::invalid_argument on a dimension mismatch.
CMatrix matmul(const CMatrix& a, const CMatrix& b);

/// Conjugate transpose.
CMatrix adjoint(const CMatrix& a);

/// Kronecker product with Alice-major index convention: the composite basis
/// index is i_A * cols(b) + i_B for square factors, so kron(a, b) acts on
/// |i_A>|i_B> ordered vectors.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Largest entry magnitude; zero for empty matrices.
double max_abs(const CMatrix& a);

/// max |a - a^dagger| entrywise. Only defined for square a.
double hermiticity_residual(const CMatrix& a);

bool is_hermitian(const CMatrix& a, double tol = HERM_TOL);

/// max |u^dagger u - I| entrywise, measuring how far u is from unitary.
double unitarity_residual(const CMatrix& u);

/// Eigendecomposition of a Hermitian matrix. The input must be square and
/// Hermitian within HERM_TOL (std::invalid_argument otherwise); failure of
/// the iteration to converge raises std::runtime_error.
HermitianEig hermitian_eig(const CMatrix& a);

/// Full SVD of an arbitrary rectangular complex matrix.
Svd svd(const CMatrix& a);

}  // namespace densecoding
