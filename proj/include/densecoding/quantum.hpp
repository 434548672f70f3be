#pragma once

#include <string>
#include <vector>

#include "densecoding/linalg.hpp"

namespace densecoding {

/// Schmidt coefficients lambda_0 >= ... >= lambda_{d-1} >= 0 of a bipartite
/// pure state, with sum of squares equal to 1 within NORM_TOL. The ambient
/// dimension d always equals the number of coefficients; zero coefficients
/// are kept, never truncated.
struct SchmidtSpectrum {
    explicit SchmidtSpectrum(RVector coefficients);

    static SchmidtSpectrum maximally_entangled(int d);
    /// Builds the spectrum from squared weights lambda_i^2 (sorted descending
    /// and renormalized exactly before taking square roots).
    static SchmidtSpectrum from_squared(RVector weights);

    int d() const { return static_cast<int>(lambdas.size()); }
    double min_coefficient() const { return lambdas(lambdas.size() - 1); }
    double coefficient_sum() const { return lambdas.sum(); }

    RVector lambdas;
};

/// Pure state of a d x d composite system as a d^2 amplitude vector,
/// Alice-major: amplitude(i_A * d + i_B) multiplies |i_A>|i_B>.
struct BipartiteState {
    BipartiteState(int d, CVector amplitudes);

    int d;
    CVector amplitudes;
};

/// Trace-preserving quantum operation given by d x d Kraus operators.
/// The constructor checks shape and finiteness only; whether the Kraus set
/// is actually trace-preserving is reported by validate_channel.
struct QuantumChannel {
    QuantumChannel(int d, std::vector<CMatrix> kraus);

    static QuantumChannel unitary(const CMatrix& u);

    int d;
    std::vector<CMatrix> kraus;
};

/// Measurement as a list of dim x dim operators. When has_inconclusive is
/// set the last element is the inconclusive outcome. Positivity and
/// completeness are reported by validate_povm, not enforced on construction.
struct Povm {
    Povm(int dim, std::vector<CMatrix> elements, bool has_inconclusive,
         std::vector<std::string> labels = {});

    int n_outcomes() const { return static_cast<int>(elements.size()); }

    int dim;
    std::vector<CMatrix> elements;
    bool has_inconclusive;
    std::vector<std::string> labels;
};

/// Prior distribution over n signals.
struct Prior {
    explicit Prior(RVector probs);

    static Prior uniform(int n);
    static Prior point_mass(int n, int r);

    int n() const { return static_cast<int>(probs.size()); }

    RVector probs;
};

/// Computational-basis amplitudes of sum_i lambda_i |i>|i>.
BipartiteState state_from_spectrum(const SchmidtSpectrum& spec);

struct SchmidtDecomposition {
    SchmidtSpectrum spectrum;
    CMatrix basis_a;  // columns |a_k>
    CMatrix basis_b;  // columns |b_k>, so that psi = sum_k lambda_k |a_k>|b_k>
};

/// Schmidt decomposition of a bipartite pure state via SVD of the d x d
/// coefficient matrix. Coefficients come out real and nonnegative; phases
/// are absorbed into the local bases.
SchmidtDecomposition schmidt_decompose(const BipartiteState& psi);

struct ChannelReport {
    double residual;  // max |sum_k E_k^dagger E_k - I|
    bool pass;        // residual <= POVM_TOL
};

ChannelReport validate_channel(const QuantumChannel& ch);

struct PovmReport {
    std::vector<double> min_eigenvalues;
    std::vector<double> hermiticity_residuals;
    double completeness_residual;  // max |sum_s Pi_s - I|
    bool pass;
};

PovmReport validate_povm(const Povm& m);

/// Density operator sum_k (E_k (x) I) |psi><psi| (E_k^dagger (x) I), the
/// joint state after Alice applies the channel to her half.
CMatrix apply_encoding(const QuantumChannel& ch, const BipartiteState& psi);

}  // namespace densecoding
