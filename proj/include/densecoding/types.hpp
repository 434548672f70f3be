#pragma once

#include <complex>

#include <Eigen/Dense>

namespace densecoding {

using Scalar  = double;
using Complex = std::complex<Scalar>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Numerical tolerances. Double precision at the dimensions in scope (d <= 16)
// stays far inside all of these.
inline constexpr double HERM_TOL    = 1e-10;  // Hermiticity of inputs
inline constexpr double RECON_TOL   = 1e-9;   // factorization residuals
inline constexpr double NORM_TOL    = 1e-10;  // state / probability normalization
inline constexpr double PSD_TOL     = 1e-9;   // eigenvalue floor for positivity
inline constexpr double POVM_TOL    = 1e-9;   // POVM completeness, trace preservation
inline constexpr double ZERO_LAMBDA = 1e-12;  // Schmidt coefficient treated as zero
inline constexpr double UNAMB_TOL   = 1e-10;  // unambiguity / constant-diagonal checks
inline constexpr double SEARCH_TOL  = 1e-9;   // allowed slack when comparing to a bound

}  // namespace densecoding
