#include "densecoding/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace densecoding {

double Rng::uniform() {
    // Top 53 bits of the 64-bit output, scaled to [0, 1).
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_positive() { return 1.0 - uniform(); }

double Rng::gaussian() {
    if (has_cached_gaussian_) {
        has_cached_gaussian_ = false;
        return cached_gaussian_;
    }
    const double u1 = uniform_positive();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_gaussian_ = radius * std::sin(angle);
    has_cached_gaussian_ = true;
    return radius * std::cos(angle);
}

double Rng::exponential() { return -std::log(uniform_positive()); }

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 1));
}

CMatrix haar_unitary(int dim, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("haar_unitary: dimension must be positive");
    CMatrix gauss(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const double re = rng.gaussian();
            const double im = rng.gaussian();
            gauss(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(gauss);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phases of R's diagonal so the distribution is Haar invariant.
    for (int k = 0; k < dim; ++k) {
        const Complex diag = r(k, k);
        const double mag = std::abs(diag);
        q.col(k) *= (mag > 0.0) ? diag / mag : Complex(1.0, 0.0);
    }
    return q;
}

RVector sample_simplex(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_simplex: n must be positive");
    RVector p(n);
    for (int i = 0; i < n; ++i) p(i) = rng.exponential();
    return p / p.sum();
}

Prior random_prior(int n, Rng& rng) { return Prior(sample_simplex(n, rng)); }

SchmidtSpectrum random_spectrum(int d, Rng& rng, double min_weight) {
    if (d < 1) throw std::invalid_argument("random_spectrum: dimension must be positive");
    if (min_weight * d >= 1.0) {
        throw std::invalid_argument("random_spectrum: min_weight too large for dimension");
    }
    for (;;) {
        RVector weights = sample_simplex(d, rng);
        if (min_weight > 0.0 && weights.minCoeff() < min_weight) continue;
        return SchmidtSpectrum::from_squared(std::move(weights));
    }
}

}  // namespace densecoding
