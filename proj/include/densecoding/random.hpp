#pragma once

#include <cstdint>
#include <random>

#include "densecoding/quantum.hpp"

namespace densecoding {

/// Deterministic random source. A given seed fully determines the sequence;
/// the uniform/gaussian transforms are hand-rolled so the stream does not
/// depend on the standard library implementation.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in (0, 1].
    double uniform_positive();
    /// Standard normal (Box-Muller, pairs cached).
    double gaussian();
    /// Exponential with rate 1.
    double exponential();

  private:
    std::mt19937_64 engine_;
    bool has_cached_gaussian_ = false;
    double cached_gaussian_ = 0.0;
};

/// Derives an independent substream seed from (seed, index), so parallel
/// trials can each own a deterministic stream.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

/// Haar-distributed random unitary: QR of an i.i.d. complex Gaussian matrix
/// with the phases of the triangular factor's diagonal folded into Q.
CMatrix haar_unitary(int dim, Rng& rng);

/// Uniform sample from the (n-1)-simplex (Dirichlet with all parameters 1),
/// via normalized exponential variates.
RVector sample_simplex(int n, Rng& rng);

Prior random_prior(int n, Rng& rng);

/// Random Schmidt spectrum: squared coefficients drawn uniformly from the
/// simplex, sorted descending. When min_weight > 0, resamples until every
/// squared coefficient is at least min_weight.
SchmidtSpectrum random_spectrum(int d, Rng& rng, double min_weight = 0.0);

}  // namespace densecoding
