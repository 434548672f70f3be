#include "densecoding/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace densecoding {

namespace {

bool all_finite(const CMatrix& m) { return m.allFinite(); }
bool all_finite(const CVector& v) { return v.allFinite(); }
bool all_finite(const RVector& v) { return v.allFinite(); }

}  // namespace

SchmidtSpectrum::SchmidtSpectrum(RVector coefficients) : lambdas(std::move(coefficients)) {
    if (lambdas.size() == 0) {
        throw std::invalid_argument("SchmidtSpectrum: empty coefficient list");
    }
    if (!all_finite(lambdas)) {
        throw std::invalid_argument("SchmidtSpectrum: non-finite coefficient");
    }
    for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
        if (lambdas(i) < 0.0) {
            throw std::invalid_argument("SchmidtSpectrum: negative coefficient");
        }
        if (i + 1 < lambdas.size() && lambdas(i) < lambdas(i + 1)) {
            throw std::invalid_argument("SchmidtSpectrum: coefficients are not descending");
        }
    }
    const double norm_sq = lambdas.squaredNorm();
    if (std::abs(norm_sq - 1.0) > NORM_TOL) {
        throw std::invalid_argument("SchmidtSpectrum: squared coefficients sum to " +
                                    std::to_string(norm_sq) + ", expected 1");
    }
}

SchmidtSpectrum SchmidtSpectrum::maximally_entangled(int d) {
    if (d < 1) throw std::invalid_argument("SchmidtSpectrum: dimension must be positive");
    return SchmidtSpectrum(RVector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d))));
}

SchmidtSpectrum SchmidtSpectrum::from_squared(RVector weights) {
    if (weights.size() == 0) {
        throw std::invalid_argument("SchmidtSpectrum: empty weight list");
    }
    if (!all_finite(weights) || (weights.array() < 0.0).any()) {
        throw std::invalid_argument("SchmidtSpectrum: weights must be finite and nonnegative");
    }
    const double total = weights.sum();
    if (total <= 0.0) {
        throw std::invalid_argument("SchmidtSpectrum: weights must not all be zero");
    }
    std::sort(weights.data(), weights.data() + weights.size(), std::greater<double>());
    return SchmidtSpectrum((weights / total).cwiseSqrt());
}

BipartiteState::BipartiteState(int d_, CVector amplitudes_)
    : d(d_), amplitudes(std::move(amplitudes_)) {
    if (d < 1) throw std::invalid_argument("BipartiteState: dimension must be positive");
    if (amplitudes.size() != static_cast<Eigen::Index>(d) * d) {
        throw std::invalid_argument("BipartiteState: expected d^2 amplitudes");
    }
    if (!all_finite(amplitudes)) {
        throw std::invalid_argument("BipartiteState: non-finite amplitude");
    }
    if (std::abs(amplitudes.squaredNorm() - 1.0) > NORM_TOL) {
        throw std::invalid_argument("BipartiteState: state is not normalized");
    }
}

QuantumChannel::QuantumChannel(int d_, std::vector<CMatrix> kraus_)
    : d(d_), kraus(std::move(kraus_)) {
    if (d < 1) throw std::invalid_argument("QuantumChannel: dimension must be positive");
    if (kraus.empty()) throw std::invalid_argument("QuantumChannel: empty Kraus list");
    for (const auto& op : kraus) {
        if (op.rows() != d || op.cols() != d) {
            throw std::invalid_argument("QuantumChannel: Kraus operator is not d x d");
        }
        if (!all_finite(op)) {
            throw std::invalid_argument("QuantumChannel: non-finite Kraus entry");
        }
    }
}

QuantumChannel QuantumChannel::unitary(const CMatrix& u) {
    if (u.rows() != u.cols()) {
        throw std::invalid_argument("QuantumChannel::unitary: matrix is not square");
    }
    return QuantumChannel(static_cast<int>(u.rows()), {u});
}

Povm::Povm(int dim_, std::vector<CMatrix> elements_, bool has_inconclusive_,
           std::vector<std::string> labels_)
    : dim(dim_),
      elements(std::move(elements_)),
      has_inconclusive(has_inconclusive_),
      labels(std::move(labels_)) {
    if (dim < 1) throw std::invalid_argument("Povm: dimension must be positive");
    if (elements.empty()) throw std::invalid_argument("Povm: empty element list");
    for (const auto& e : elements) {
        if (e.rows() != dim || e.cols() != dim) {
            throw std::invalid_argument("Povm: element is not dim x dim");
        }
        if (!all_finite(e)) {
            throw std::invalid_argument("Povm: non-finite element entry");
        }
    }
    if (!labels.empty() && labels.size() != elements.size()) {
        throw std::invalid_argument("Povm: label count does not match element count");
    }
    if (labels.empty()) {
        labels.reserve(elements.size());
        for (std::size_t s = 0; s < elements.size(); ++s) {
            const bool inconclusive = has_inconclusive && s + 1 == elements.size();
            labels.push_back(inconclusive ? "?" : std::to_string(s));
        }
    }
}

Prior::Prior(RVector probs_) : probs(std::move(probs_)) {
    if (probs.size() == 0) throw std::invalid_argument("Prior: empty distribution");
    if (!all_finite(probs) || (probs.array() < 0.0).any()) {
        throw std::invalid_argument("Prior: probabilities must be finite and nonnegative");
    }
    if (std::abs(probs.sum() - 1.0) > NORM_TOL) {
        throw std::invalid_argument("Prior: probabilities sum to " + std::to_string(probs.sum()) +
                                    ", expected 1");
    }
}

Prior Prior::uniform(int n) {
    if (n < 1) throw std::invalid_argument("Prior: n must be positive");
    return Prior(RVector::Constant(n, 1.0 / n));
}

Prior Prior::point_mass(int n, int r) {
    if (n < 1 || r < 0 || r >= n) throw std::invalid_argument("Prior: index out of range");
    RVector p = RVector::Zero(n);
    p(r) = 1.0;
    return Prior(std::move(p));
}

BipartiteState state_from_spectrum(const SchmidtSpectrum& spec) {
    const int d = spec.d();
    CVector amp = CVector::Zero(static_cast<Eigen::Index>(d) * d);
    for (int i = 0; i < d; ++i) {
        amp(static_cast<Eigen::Index>(i) * d + i) = spec.lambdas(i);
    }
    return BipartiteState(d, std::move(amp));
}

SchmidtDecomposition schmidt_decompose(const BipartiteState& psi) {
    const int d = psi.d;
    CMatrix coeff(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            coeff(i, j) = psi.amplitudes(static_cast<Eigen::Index>(i) * d + j);
        }
    }
    Svd dec = svd(coeff);
    // coeff = U diag(s) V^dagger, so psi = sum_k s_k |u_k> (x) |conj(v_k)>.
    RVector lambdas = dec.singular_values;
    lambdas /= lambdas.norm();  // sum of squares exactly 1
    return SchmidtDecomposition{SchmidtSpectrum(std::move(lambdas)), dec.u, dec.v.conjugate()};
}

ChannelReport validate_channel(const QuantumChannel& ch) {
    CMatrix sum = CMatrix::Zero(ch.d, ch.d);
    for (const auto& op : ch.kraus) {
        sum += op.adjoint() * op;
    }
    const double residual = max_abs(sum - CMatrix::Identity(ch.d, ch.d));
    return ChannelReport{residual, residual <= POVM_TOL};
}

PovmReport validate_povm(const Povm& m) {
    PovmReport report;
    report.min_eigenvalues.reserve(m.elements.size());
    report.hermiticity_residuals.reserve(m.elements.size());
    bool pass = true;
    CMatrix sum = CMatrix::Zero(m.dim, m.dim);
    for (const auto& e : m.elements) {
        const double herm = hermiticity_residual(e);
        report.hermiticity_residuals.push_back(herm);
        if (herm > HERM_TOL) pass = false;
        // Eigenvalues of the Hermitian part; identical to those of e whenever
        // the Hermiticity check above passes.
        const CMatrix sym = 0.5 * (e + e.adjoint());
        const HermitianEig eig = hermitian_eig(sym);
        const double min_eig = eig.eigenvalues(eig.eigenvalues.size() - 1);
        report.min_eigenvalues.push_back(min_eig);
        if (min_eig < -PSD_TOL) pass = false;
        sum += e;
    }
    report.completeness_residual = max_abs(sum - CMatrix::Identity(m.dim, m.dim));
    if (report.completeness_residual > POVM_TOL) pass = false;
    report.pass = pass;
    return report;
}

CMatrix apply_encoding(const QuantumChannel& ch, const BipartiteState& psi) {
    if (ch.d != psi.d) {
        throw std::invalid_argument("apply_encoding: channel and state dimensions differ");
    }
    const int d = ch.d;
    const CMatrix eye = CMatrix::Identity(d, d);
    CMatrix rho = CMatrix::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
    for (const auto& op : ch.kraus) {
        const CVector branch = kron(op, eye) * psi.amplitudes;
        rho += branch * branch.adjoint();
    }
    return rho;
}

}  // namespace densecoding
