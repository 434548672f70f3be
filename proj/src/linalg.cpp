#include "densecoding/linalg.hpp"

#include <stdexcept>
#include <string>

namespace densecoding {

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: dimension mismatch (" + std::to_string(a.rows()) +
                                    "x" + std::to_string(a.cols()) + " times " +
                                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                                    ")");
    }
    return a * b;
}

CMatrix adjoint(const CMatrix& a) { return a.adjoint(); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double max_abs(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const CMatrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("hermiticity_residual: matrix is not square");
    }
    return max_abs(a - a.adjoint());
}

bool is_hermitian(const CMatrix& a, double tol) {
    return a.rows() == a.cols() && hermiticity_residual(a) <= tol;
}

double unitarity_residual(const CMatrix& u) {
    return max_abs(u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols()));
}

HermitianEig hermitian_eig(const CMatrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("hermitian_eig: matrix is not square");
    }
    if (!is_hermitian(a)) {
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
    }
    // Eigen returns ascending order; flip to descending.
    const Eigen::Index n = a.rows();
    HermitianEig result;
    result.eigenvalues = solver.eigenvalues().reverse();
    result.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        result.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return result;
}

Svd svd(const CMatrix& a) {
    Eigen::JacobiSVD<CMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("svd: decomposition failed to converge");
    }
    return Svd{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

}  // namespace densecoding
