#include "densecoding/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "densecoding/random.hpp"

namespace densecoding {

Signal::Signal(int m_, int n_, int d) : m(m_), n(n_) {
    if (d < 1 || m < 0 || m >= d || n < 0 || n >= d) {
        throw std::invalid_argument("Signal: indices out of range");
    }
}

Signal Signal::from_index(int r, int d) {
    if (d < 1 || r < 0 || r >= d * d) {
        throw std::invalid_argument("Signal: flat index out of range");
    }
    return Signal(r / d, r % d, d);
}

DenseCodingProtocol::DenseCodingProtocol(int d_, std::vector<QuantumChannel> encodings_,
                                         Povm measurement_)
    : d(d_), encodings(std::move(encodings_)), measurement(std::move(measurement_)) {
    if (d < 1) throw std::invalid_argument("DenseCodingProtocol: dimension must be positive");
    if (encodings.size() != static_cast<std::size_t>(d) * d) {
        throw std::invalid_argument("DenseCodingProtocol: expected d^2 encodings");
    }
    for (const auto& ch : encodings) {
        if (ch.d != d) throw std::invalid_argument("DenseCodingProtocol: encoding dimension mismatch");
    }
    if (measurement.dim != d * d) {
        throw std::invalid_argument("DenseCodingProtocol: measurement must act on dimension d^2");
    }
    const std::size_t expected = static_cast<std::size_t>(d) * d + (measurement.has_inconclusive ? 1 : 0);
    if (measurement.elements.size() != expected) {
        throw std::invalid_argument("DenseCodingProtocol: unexpected POVM element count");
    }
}

OutcomeMatrix::OutcomeMatrix(int d_, RMatrix p_, bool has_inconclusive_)
    : d(d_), p(std::move(p_)), has_inconclusive(has_inconclusive_) {
    if (d < 1) throw std::invalid_argument("OutcomeMatrix: dimension must be positive");
    const Eigen::Index signals = static_cast<Eigen::Index>(d) * d;
    if (p.rows() != signals || p.cols() != signals + (has_inconclusive ? 1 : 0)) {
        throw std::invalid_argument("OutcomeMatrix: unexpected shape");
    }
    if (!p.allFinite()) throw std::invalid_argument("OutcomeMatrix: non-finite entry");
    if ((p.array() < -PSD_TOL).any() || (p.array() > 1.0 + PSD_TOL).any()) {
        throw std::invalid_argument("OutcomeMatrix: entry outside [0, 1]");
    }
    for (Eigen::Index r = 0; r < p.rows(); ++r) {
        if (std::abs(p.row(r).sum() - 1.0) > NORM_TOL) {
            throw std::invalid_argument("OutcomeMatrix: row " + std::to_string(r) +
                                        " does not sum to 1");
        }
    }
}

double OutcomeMatrix::inconclusive(int r) const {
    if (!has_inconclusive) {
        throw std::invalid_argument("OutcomeMatrix: no inconclusive column");
    }
    return p(r, p.cols() - 1);
}

std::string to_string(ProtocolKind kind) {
    return kind == ProtocolKind::approximate ? "approximate" : "unambiguous";
}

ProtocolKind protocol_kind_from_string(const std::string& name) {
    if (name == "approximate") return ProtocolKind::approximate;
    if (name == "unambiguous") return ProtocolKind::unambiguous;
    throw std::invalid_argument("unknown protocol kind: " + name);
}

OutcomeMatrix outcome_matrix(const DenseCodingProtocol& proto, const BipartiteState& psi) {
    if (proto.d != psi.d) {
        throw std::invalid_argument("outcome_matrix: protocol and state dimensions differ");
    }
    for (std::size_t r = 0; r < proto.encodings.size(); ++r) {
        const ChannelReport rep = validate_channel(proto.encodings[r]);
        if (!rep.pass) {
            throw std::invalid_argument("outcome_matrix: encoding " + std::to_string(r) +
                                        " is not trace-preserving (residual " +
                                        std::to_string(rep.residual) + ")");
        }
    }
    const PovmReport mrep = validate_povm(proto.measurement);
    if (!mrep.pass) {
        throw std::invalid_argument("outcome_matrix: measurement is not a valid POVM "
                                    "(completeness residual " +
                                    std::to_string(mrep.completeness_residual) + ")");
    }

    const int signals = proto.d * proto.d;
    const int outcomes = proto.measurement.n_outcomes();
    RMatrix p(signals, outcomes);
    for (int r = 0; r < signals; ++r) {
        const CMatrix rho = apply_encoding(proto.encodings[r], psi);
        for (int s = 0; s < outcomes; ++s) {
            // Tr(Pi rho) = sum_{ij} Pi_ij rho_ji
            const Complex tr = proto.measurement.elements[s].cwiseProduct(rho.transpose()).sum();
            p(r, s) = tr.real();
        }
    }
    return OutcomeMatrix(proto.d, std::move(p), proto.measurement.has_inconclusive);
}

double success_probability(const OutcomeMatrix& om, const Prior& prior) {
    if (prior.n() != om.n_signals()) {
        throw std::invalid_argument("success_probability: prior length must be d^2");
    }
    return prior.probs.dot(om.diagonal());
}

double average_success_probability(const OutcomeMatrix& om) {
    return om.diagonal().sum() / om.n_signals();
}

MonteCarloEstimate monte_carlo_average(const OutcomeMatrix& om, long samples,
                                       std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("monte_carlo_average: samples must be >= 1");
    const int n = om.n_signals();
    const RVector diag = om.diagonal();
    Rng rng(seed);

    // Welford running statistics for the success value and each coordinate.
    double mean = 0.0, m2 = 0.0;
    RVector cmean = RVector::Zero(n), cm2 = RVector::Zero(n);
    for (long i = 0; i < samples; ++i) {
        const RVector prior = sample_simplex(n, rng);
        const double x = prior.dot(diag);
        const double count = static_cast<double>(i + 1);
        const double delta = x - mean;
        mean += delta / count;
        m2 += delta * (x - mean);
        const RVector cdelta = prior - cmean;
        cmean += cdelta / count;
        cm2.array() += cdelta.array() * (prior - cmean).array();
    }

    MonteCarloEstimate out;
    out.estimate = mean;
    out.samples = samples;
    if (samples > 1) {
        out.std_error = std::sqrt(m2 / (samples - 1) / samples);
        out.coordinate_std_errors =
            (cm2 / static_cast<double>(samples - 1) / static_cast<double>(samples))
                .cwiseSqrt();
    } else {
        out.std_error = 0.0;
        out.coordinate_std_errors = RVector::Zero(n);
    }
    out.coordinate_means = cmean;
    return out;
}

double approximate_bound(const SchmidtSpectrum& spec) {
    const double sum = spec.coefficient_sum();
    return sum * sum / spec.d();
}

double unambiguous_bound(const SchmidtSpectrum& spec) {
    const double min = spec.min_coefficient();
    return spec.d() * min * min;
}

CMatrix generalized_pauli(int d, int m, int n) {
    if (d < 1 || m < 0 || m >= d || n < 0 || n >= d) {
        throw std::invalid_argument("generalized_pauli: indices out of range");
    }
    CMatrix sigma = CMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double phase = 2.0 * std::numbers::pi * k * n / d;
        sigma((k + m) % d, k) = Complex(std::cos(phase), std::sin(phase));
    }
    return sigma;
}

namespace {

std::vector<QuantumChannel> pauli_encodings(int d) {
    std::vector<QuantumChannel> encodings;
    encodings.reserve(static_cast<std::size_t>(d) * d);
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            encodings.push_back(QuantumChannel::unitary(generalized_pauli(d, m, n)));
        }
    }
    return encodings;
}

/// |k+m>|k> composite amplitudes with coefficient weight(k) e^{2 pi i k n / d}.
CVector shifted_fourier_vector(int d, int m, int n, const RVector& weight) {
    CVector phi = CVector::Zero(static_cast<Eigen::Index>(d) * d);
    for (int k = 0; k < d; ++k) {
        const double phase = 2.0 * std::numbers::pi * k * n / d;
        phi(static_cast<Eigen::Index>((k + m) % d) * d + k) =
            weight(k) * Complex(std::cos(phase), std::sin(phase));
    }
    return phi;
}

std::vector<std::string> signal_labels(int d, bool with_inconclusive) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(d) * d + (with_inconclusive ? 1 : 0));
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            labels.push_back(std::to_string(m) + "," + std::to_string(n));
        }
    }
    if (with_inconclusive) labels.push_back("?");
    return labels;
}

}  // namespace

DenseCodingProtocol build_approximate_protocol(int d) {
    if (d < 2) throw std::invalid_argument("build_approximate_protocol: d must be >= 2");
    const RVector weight = RVector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
    std::vector<CMatrix> elements;
    elements.reserve(static_cast<std::size_t>(d) * d);
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            const CVector phi = shifted_fourier_vector(d, m, n, weight);
            elements.push_back(phi * phi.adjoint());
        }
    }
    Povm measurement(d * d, std::move(elements), false, signal_labels(d, false));
    return DenseCodingProtocol(d, pauli_encodings(d), std::move(measurement));
}

DenseCodingProtocol build_unambiguous_protocol(const SchmidtSpectrum& spec) {
    const int d = spec.d();
    if (d < 2) throw std::invalid_argument("build_unambiguous_protocol: d must be >= 2");
    const double lambda_min = spec.min_coefficient();
    if (lambda_min <= ZERO_LAMBDA) {
        throw std::invalid_argument(
            "build_unambiguous_protocol: the least Schmidt coefficient is zero, so the "
            "conclusive-probability bound is 0 and is saturated trivially by the "
            "all-inconclusive measurement; no nontrivial construction exists");
    }
    const RVector inverse = spec.lambdas.cwiseInverse();
    const double scale = lambda_min * lambda_min / d;
    const Eigen::Index dim = static_cast<Eigen::Index>(d) * d;
    std::vector<CMatrix> elements;
    elements.reserve(static_cast<std::size_t>(d) * d + 1);
    CMatrix total = CMatrix::Zero(dim, dim);
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            const CVector phi = shifted_fourier_vector(d, m, n, inverse);
            CMatrix element = scale * (phi * phi.adjoint());
            total += element;
            elements.push_back(std::move(element));
        }
    }
    elements.push_back(CMatrix::Identity(dim, dim) - total);
    Povm measurement(d * d, std::move(elements), true, signal_labels(d, true));
    return DenseCodingProtocol(d, pauli_encodings(d), std::move(measurement));
}

UnambiguousReport check_unambiguous(const OutcomeMatrix& om) {
    const int signals = om.n_signals();
    UnambiguousReport report;
    report.has_inconclusive = om.has_inconclusive;
    report.diagonal = om.diagonal();
    double max_off = 0.0;
    for (int r = 0; r < signals; ++r) {
        for (int s = 0; s < signals; ++s) {
            if (s != r) max_off = std::max(max_off, std::abs(om.p(r, s)));
        }
    }
    report.max_off_diagonal = max_off;
    report.max_diagonal_spread = report.diagonal.maxCoeff() - report.diagonal.minCoeff();
    report.conclusive_probability = report.diagonal.mean();
    report.unambiguous = max_off <= UNAMB_TOL;
    report.constant_success = report.max_diagonal_spread <= UNAMB_TOL;
    report.pass = report.unambiguous && report.constant_success;
    return report;
}

RVector post_probability(const OutcomeMatrix& om, const Prior& prior) {
    if (!om.has_inconclusive) {
        throw std::invalid_argument("post_probability: outcome matrix has no inconclusive column");
    }
    if (prior.n() != om.n_signals()) {
        throw std::invalid_argument("post_probability: prior length must be d^2");
    }
    const RVector joint = prior.probs.cwiseProduct(om.diagonal());
    const double conclusive_mass = joint.sum();
    if (conclusive_mass <= 0.0) {
        throw std::invalid_argument("post_probability: zero conclusive mass under this prior");
    }
    return joint / conclusive_mass;
}

namespace {

/// Random protocol of the approximate family: independent Haar unitary
/// encodings and the Fourier-basis POVM conjugated by a Haar unitary on the
/// composite space.
DenseCodingProtocol random_approximate_protocol(const DenseCodingProtocol& reference, Rng& rng) {
    const int d = reference.d;
    std::vector<QuantumChannel> encodings;
    encodings.reserve(static_cast<std::size_t>(d) * d);
    for (int r = 0; r < d * d; ++r) {
        encodings.push_back(QuantumChannel::unitary(haar_unitary(d, rng)));
    }
    const CMatrix w = haar_unitary(d * d, rng);
    std::vector<CMatrix> elements;
    elements.reserve(reference.measurement.elements.size());
    for (const auto& e : reference.measurement.elements) {
        elements.push_back(w * e * w.adjoint());
    }
    Povm measurement(d * d, std::move(elements), false, signal_labels(d, false));
    return DenseCodingProtocol(d, std::move(encodings), std::move(measurement));
}

/// Random member of the unambiguous family: the optimal POVM with all
/// conclusive elements shrunk by a common factor in (0, 1], which keeps the
/// protocol error-free with a constant conditional success probability.
DenseCodingProtocol random_unambiguous_protocol(const DenseCodingProtocol& reference, Rng& rng) {
    const double scale = rng.uniform_positive();
    DenseCodingProtocol proto = reference;
    const Eigen::Index dim = proto.measurement.dim;
    CMatrix total = CMatrix::Zero(dim, dim);
    auto& elements = proto.measurement.elements;
    for (std::size_t s = 0; s + 1 < elements.size(); ++s) {
        elements[s] *= scale;
        total += elements[s];
    }
    elements.back() = CMatrix::Identity(dim, dim) - total;
    return proto;
}

}  // namespace

BoundReport random_protocol_search(const SchmidtSpectrum& spec, long trials, std::uint64_t seed,
                                   ProtocolKind kind) {
    if (trials < 1) throw std::invalid_argument("random_protocol_search: trials must be >= 1");
    const int d = spec.d();
    const BipartiteState psi = state_from_spectrum(spec);
    const double bound = kind == ProtocolKind::approximate ? approximate_bound(spec)
                                                           : unambiguous_bound(spec);
    const DenseCodingProtocol analytic = kind == ProtocolKind::approximate
                                             ? build_approximate_protocol(d)
                                             : build_unambiguous_protocol(spec);

    double best = 0.0;
    for (long trial = 0; trial < trials; ++trial) {
        Rng rng(substream_seed(seed, static_cast<std::uint64_t>(trial)));
        double value = 0.0;
        if (kind == ProtocolKind::approximate) {
            const DenseCodingProtocol proto =
                trial == 0 ? analytic : random_approximate_protocol(analytic, rng);
            value = average_success_probability(outcome_matrix(proto, psi));
        } else {
            const DenseCodingProtocol proto =
                trial == 0 ? analytic : random_unambiguous_protocol(analytic, rng);
            const UnambiguousReport rep = check_unambiguous(outcome_matrix(proto, psi));
            // Only error-free constant-success protocols count as unambiguous.
            if (rep.pass) value = rep.conclusive_probability;
        }
        best = std::max(best, value);
    }
    return BoundReport{bound, best, bound - best, kind};
}

TriangleReport triangle_inequality_check(const std::vector<CVector>& vectors) {
    if (vectors.empty()) {
        throw std::invalid_argument("triangle_inequality_check: empty vector family");
    }
    const Eigen::Index dim = vectors.front().size();
    for (const auto& v : vectors) {
        if (v.size() != dim) {
            throw std::invalid_argument("triangle_inequality_check: vectors differ in dimension");
        }
    }
    CVector total = CVector::Zero(dim);
    double norm_sum = 0.0;
    for (const auto& v : vectors) {
        total += v;
        norm_sum += v.norm();
    }
    TriangleReport report;
    report.lhs = total.squaredNorm();
    report.rhs = norm_sum * norm_sum;
    report.slack = report.rhs - report.lhs;
    report.holds = report.slack >= -1e-12;
    return report;
}

}  // namespace densecoding
