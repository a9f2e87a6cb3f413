#pragma once

#include <vector>

#include "siginform/hankel.hpp"
#include "siginform/interconnection.hpp"

namespace siginform {

/// Value and first L-1 derivatives of the input and output at one instant.
struct JetSample {
    double time = 0.0;
    Vector u_jet;  // length L
    Vector y_jet;  // length L
};

struct CtHankel {
    Matrix matrix;  // 2L x k, one column per sample
    std::vector<double> sample_times;
    Index depth_l = 0;
};

/// Jets computed analytically from the closed-form interconnection response:
/// u^(j)(t) = Lg Sg^j e^{Sg t} w0, y^(j)(t) = Mg Sg^j e^{Sg t} w0 +
/// C A^j e^{A t} x_bar0. Requires continuous-time plant and generator.
JetSample ct_jet(const LtiSystem& plant, const SignalGenerator& gen,
                 const InterconnectionAnalysis& analysis, double t, Index l);

std::vector<JetSample> sample_jets(const LtiSystem& plant, const SignalGenerator& gen,
                                   const InterconnectionAnalysis& analysis,
                                   const std::vector<double>& times, Index l);

CtHankel ct_hankel(const std::vector<JetSample>& samples);

/// Rank test of the sampled jets against L + rank(O_L(C,A)).
InformativityVerdict ct_is_informative(const std::vector<JetSample>& samples, Index l,
                                       const LtiSystem& plant,
                                       std::optional<double> tol = std::nullopt);

/// Continuous-time case split on the generator dimension; same cases as the
/// discrete classifier but with no data-length condition (any T > 0 works).
TheoremOneVerdict classify_theorem2(const LtiSystem& plant, const SignalGenerator& gen,
                                    const Vector& x0, Index l);

/// k Chebyshev-spaced instants in (0, t_final), the default sampling rule.
std::vector<double> chebyshev_times(Index k, double t_final);
std::vector<double> equispaced_times(Index k, double t_final);
std::vector<double> uniform_random_times(Index k, double t_final, Rng& rng);

}  // namespace siginform
