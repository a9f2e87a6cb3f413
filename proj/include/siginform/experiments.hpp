#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "siginform/serialization.hpp"

namespace siginform {

/// Monte Carlo confirmation of the case-B claim: with L <= Ng < L+n and
/// T >= Ng+n+L-1, random draws are informative except on the measure-zero
/// set E2. `adversarial` replaces the random initial state with a
/// constructed E2 member, so every trial should fail the rank test.
struct Theorem1McConfig {
    Index n = 3;
    Index n_g = 4;
    Index l = 4;
    Index t_len = 10;
    int trials = 100;
    std::uint64_t seed = 1;
    bool adversarial = false;
    std::optional<double> tol;
};

struct Corollary2Config {
    Index n = 3;
    int trials = 100;
    std::uint64_t seed = 1;
    std::optional<double> tol;
};

struct WillemsCompareConfig {
    Index n = 3;
    int trials = 100;
    std::uint64_t seed = 1;
    std::optional<double> tol;
};

struct Lemma2Config {
    std::vector<Index> t_values = {5, 6, 7, 8};
    int trials = 1000;
    std::uint64_t seed = 1;
    std::optional<double> tol;
};

struct CtInformativityConfig {
    Index n = 2;
    Index n_g = 3;
    Index l = 3;
    Index k = 7;
    int trials = 1000;
    std::uint64_t seed = 1;
    double t_final = 1.0;
    std::optional<double> tol;
};

/// A plant/generator pair passing the interconnection assumptions with a
/// healthy spectral separation (redraws otherwise). The default gap floor is
/// 1e-3 in discrete time and 5e-2 in continuous time, where the analytic jet
/// formulas cancel large Pi-scaled terms and need smaller solution norms.
struct DrawnInstance {
    LtiSystem plant;
    SignalGenerator gen;
};

DrawnInstance draw_instance(Index n, Index n_g, Rng& rng,
                            TimeDomain domain = TimeDomain::Discrete,
                            std::optional<double> min_gap = std::nullopt);

Json run_theorem1_mc(const Theorem1McConfig& config);
Json run_corollary2(const Corollary2Config& config);
Json run_willems_compare(const WillemsCompareConfig& config);
Json run_lemma2_mc(const Lemma2Config& config);
Json run_ct_informativity(const CtInformativityConfig& config);

}  // namespace siginform
