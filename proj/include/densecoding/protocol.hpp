#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "densecoding/quantum.hpp"

namespace densecoding {

/// One of the d^2 classical signals, addressed either by the flat index r or
/// by the (shift, phase) pair with r = m * d + n.
struct Signal {
    Signal(int m, int n, int d);

    static Signal from_index(int r, int d);

    int index(int d) const { return m * d + n; }

    int m;  // cyclic shift
    int n;  // phase gradient
};

/// A complete dense coding scheme: one encoding channel per signal on
/// Alice's side and one POVM on the composite system on Bob's side.
struct DenseCodingProtocol {
    DenseCodingProtocol(int d, std::vector<QuantumChannel> encodings, Povm measurement);

    int d;
    std::vector<QuantumChannel> encodings;
    Povm measurement;
};

/// Conditional outcome probabilities p(r, s) = P(outcome s | signal r) for a
/// protocol run on a fixed shared state. Rows are indexed by the sent
/// signal; when has_inconclusive is set the last column is the inconclusive
/// outcome. Every row sums to 1.
struct OutcomeMatrix {
    OutcomeMatrix(int d, RMatrix p, bool has_inconclusive);

    int n_signals() const { return d * d; }
    int n_outcomes() const { return static_cast<int>(p.cols()); }
    double diagonal(int r) const { return p(r, r); }
    RVector diagonal() const { return p.diagonal().head(n_signals()); }
    double inconclusive(int r) const;

    int d;
    RMatrix p;
    bool has_inconclusive;
};

enum class ProtocolKind { approximate, unambiguous };

std::string to_string(ProtocolKind kind);
ProtocolKind protocol_kind_from_string(const std::string& name);

/// Result of comparing an achieved figure of merit against its analytic
/// upper bound; gap = bound_value - achieved_value.
struct BoundReport {
    double bound_value;
    double achieved_value;
    double gap;
    ProtocolKind kind;
};

/// Full conditional probability table P(s|r) = Tr(Pi_s E_r(|psi><psi|)).
/// Encodings and measurement are validated first; an invalid channel or POVM
/// is rejected with the offending residual in the message.
OutcomeMatrix outcome_matrix(const DenseCodingProtocol& proto, const BipartiteState& psi);

/// sum_r p_r P(r|r).
double success_probability(const OutcomeMatrix& om, const Prior& prior);

/// Success probability averaged over priors drawn uniformly from the
/// simplex; equals (1/d^2) sum_r P(r|r).
double average_success_probability(const OutcomeMatrix& om);

struct MonteCarloEstimate {
    double estimate;
    double std_error;
    // Per-coordinate statistics of the sampled priors, for consistency
    // checks against the simplex mean 1/d^2.
    RVector coordinate_means;
    RVector coordinate_std_errors;
    long samples;
};

/// Estimates the average success probability by sampling priors uniformly
/// from the d^2-simplex. A fixed seed fully determines the result.
MonteCarloEstimate monte_carlo_average(const OutcomeMatrix& om, long samples, std::uint64_t seed);

/// Upper bound (1/d) (sum_i lambda_i)^2 on the average success probability
/// of any approximate protocol.
double approximate_bound(const SchmidtSpectrum& spec);

/// Upper bound d * lambda_{d-1}^2 on the conclusive probability of any
/// unambiguous protocol.
double unambiguous_bound(const SchmidtSpectrum& spec);

/// Generalized Pauli unitary sigma_mn = sum_k e^{2 pi i k n / d} |k+m><k|
/// (addition mod d): a cyclic shift by m combined with a phase gradient n.
CMatrix generalized_pauli(int d, int m, int n);

/// Protocol saturating the approximate bound: sigma_mn encodings and the
/// rank-1 Fourier-basis POVM on the composite system.
DenseCodingProtocol build_approximate_protocol(int d);

/// Protocol saturating the unambiguous bound. Requires every Schmidt
/// coefficient positive (lambda_{d-1} > ZERO_LAMBDA); otherwise the bound is
/// 0, only saturated trivially by the all-inconclusive measurement, and the
/// construction is rejected.
DenseCodingProtocol build_unambiguous_protocol(const SchmidtSpectrum& spec);

struct UnambiguousReport {
    bool has_inconclusive;
    double max_off_diagonal;      // largest P(s|r), s != r, conclusive columns only
    RVector diagonal;             // P(r|r)
    double max_diagonal_spread;   // max_r P(r|r) - min_r P(r|r)
    double conclusive_probability;  // mean diagonal; the common C when constant
    bool unambiguous;             // max_off_diagonal <= UNAMB_TOL
    bool constant_success;        // max_diagonal_spread <= UNAMB_TOL
    bool pass;                    // both of the above
};

/// Checks the two defining properties of unambiguous dense coding on an
/// outcome matrix: error-free conclusive outcomes and a signal-independent
/// conditional success probability.
UnambiguousReport check_unambiguous(const OutcomeMatrix& om);

/// Posterior signal distribution given a conclusive outcome:
/// P(r|con) = p_r P(r|r) / sum_r p_r P(r|r). Requires an inconclusive
/// column and nonzero conclusive mass.
RVector post_probability(const OutcomeMatrix& om, const Prior& prior);

/// Random search over protocols of the given kind; trial 0 is the analytic
/// construction, later trials draw random protocols from a seeded stream.
/// Returns the best figure of merit found next to the analytic bound.
BoundReport random_protocol_search(const SchmidtSpectrum& spec, long trials, std::uint64_t seed,
                                   ProtocolKind kind);

struct TriangleReport {
    double lhs;    // || sum_k x_k ||^2
    double rhs;    // ( sum_k ||x_k|| )^2
    double slack;  // rhs - lhs, nonnegative up to round-off
    bool holds;
};

/// Triangle inequality for complex vectors under the quadratic norm:
/// sum_alpha |sum_k x_{k alpha}|^2 <= (sum_k ||x_k||)^2.
TriangleReport triangle_inequality_check(const std::vector<CVector>& vectors);

}  // namespace densecoding
