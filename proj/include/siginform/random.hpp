#pragma once

#include <cstdint>
#include <random>

#include "siginform/numerics.hpp"

namespace siginform {

/// Deterministic RNG for experiments. Gaussian variates use Box-Muller on
/// top of mt19937_64 so a seed fully determines every draw (no reliance on
/// the implementation-defined std::normal_distribution).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal();

    Vector normal_vector(Index n);
    Matrix normal_matrix(Index rows, Index cols);

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Counter-based seed split: trial i of a run with master seed s gets its own
/// independent, reproducible stream.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

}  // namespace siginform
