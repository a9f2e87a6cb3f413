#pragma once

#include <optional>
#include <vector>

#include "siginform/lti.hpp"
#include "siginform/numerics.hpp"
#include "siginform/random.hpp"

namespace siginform {

/// Autonomous single-output system w+ = Sg*w, u = Lg*w, w(0) = w0, used as
/// the input source for a plant.
struct SignalGenerator {
    Matrix s_g;  // Ng x Ng
    Matrix l_g;  // 1 x Ng
    Vector w0;   // Ng
    TimeDomain time_domain = TimeDomain::Discrete;

    Index dimension() const { return s_g.rows(); }
    void validate() const;
};

struct SpectralGapReport {
    bool disjoint = false;
    double min_gap = 0.0;    // min |lambda(A) - lambda(Sg)| over all pairs
    double tolerance = 0.0;  // gap below this counts as a violation
};

struct AssumptionReport {
    bool obs_lg_sg = false;   // (Lg, Sg) observable
    bool ctrb_sg_w0 = false;  // (Sg, w0) controllable
    std::optional<SpectralGapReport> spectra_disjoint;  // only when a plant was supplied

    bool generator_ok() const { return obs_lg_sg && ctrb_sg_w0; }
    bool all_hold() const {
        return generator_ok() && (!spectra_disjoint || spectra_disjoint->disjoint);
    }
};

/// Rank tests on O(Lg,Sg) and C(Sg,w0); when a plant is supplied, also the
/// eigenvalue-gap test between sigma(A) and sigma(Sg). Pairs closer than
/// 1e-8*(1 + max spectral radius) count as a violation.
AssumptionReport check_assumptions(const SignalGenerator& gen, const LtiSystem* plant = nullptr);

/// u(t) = Lg * Sg^t * w0 for t = 0..t_len-1, by state recursion.
std::vector<double> response(const SignalGenerator& gen, Index t_len);

/// Block-diagonal of 2x2 rotations (one per frequency), plus a scalar unit
/// block when `bias` is set. Empty amplitude/phase lists mean unit amplitude
/// and zero phase. Frequencies must be distinct and strictly inside (0, pi).
SignalGenerator multisine_generator(const std::vector<double>& freqs, bool bias,
                                    const std::vector<double>& amplitudes = {},
                                    const std::vector<double>& phases = {},
                                    double bias_amplitude = 1.0);

/// Largest K such that the depth-K Hankel matrix of u has full row rank.
/// Ascending scan; stops at the first failing depth (rank monotonicity).
Index max_pe_order(const std::vector<double>& u, std::optional<double> tol = std::nullopt);

/// k x (T-k+1) Hankel matrix of u. Requires 1 <= k <= T.
Matrix signal_hankel(const std::vector<double>& u, Index k);

/// Recovers a minimal generator reproducing the signal: Sg is the companion
/// matrix of the recursion satisfied by u, Lg = [1 0 ... 0], w0 = the first K
/// samples. The order defaults to max_pe_order(u). Throws
/// std::invalid_argument when the signal admits no order-K generator
/// representation (rank condition or reproduction check fails).
SignalGenerator realize_from_signal(const std::vector<double>& u,
                                    std::optional<Index> order = std::nullopt,
                                    std::optional<double> tol = std::nullopt);

/// True iff the generator's length-t_len response has max PE order equal to
/// the generator dimension and passes the one-step rank-saturation test.
/// Requires the generator assumptions and t_len >= 2*Ng - 1.
bool lemma1_equivalence_check(const SignalGenerator& gen, Index t_len,
                              std::optional<double> tol = std::nullopt);

/// Random generator draw: Sg is Haar-random orthogonal (every mode persists
/// over short windows), Lg and w0 standard normal, redrawn until observable
/// and controllable.
SignalGenerator random_generator(Index n_g, Rng& rng, TimeDomain domain = TimeDomain::Discrete);

}  // namespace siginform
