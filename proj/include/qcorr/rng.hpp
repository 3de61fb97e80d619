#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace qcorr {

/// Seedable, splittable generator. Engine is std::mt19937_64 seeded from a
/// SplitMix64 hash of (seed, stream); uniforms use the top 53 bits and
/// normals come from Box-Muller, so draws are identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    /// Independent generator for sub-task `index`.
    Rng split(std::uint64_t index) const;

    std::uint64_t next_u64() { return engine_(); }
    double uniform();                      // [0, 1)
    double uniform(double lo, double hi);  // [lo, hi)
    double normal();                       // N(0, 1)
    std::complex<double> complex_normal();  // E|z|^2 = 1
    std::size_t index(std::size_t n);       // [0, n)

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace qcorr
