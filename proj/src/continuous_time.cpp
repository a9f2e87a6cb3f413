#include "siginform/continuous_time.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "siginform/errors.hpp"

namespace siginform {

JetSample ct_jet(const LtiSystem& plant, const SignalGenerator& gen,
                 const InterconnectionAnalysis& analysis, double t, Index l) {
    if (plant.time_domain != TimeDomain::Continuous ||
        gen.time_domain != TimeDomain::Continuous)
        throw std::invalid_argument("ct_jet: plant and generator must be continuous-time");
    if (l < 1) throw std::invalid_argument("ct_jet: l must be >= 1");

    const Vector w_t = (gen.s_g * t).exp() * gen.w0;
    const Vector xb_t = (plant.a * t).exp() * analysis.x_bar0;

    JetSample sample;
    sample.time = t;
    sample.u_jet = observability_matrix(gen.l_g, gen.s_g, l) * w_t;
    sample.y_jet = observability_matrix(analysis.m_g, gen.s_g, l) * w_t +
                   observability_matrix(plant.c, plant.a, l) * xb_t;
    return sample;
}

std::vector<JetSample> sample_jets(const LtiSystem& plant, const SignalGenerator& gen,
                                   const InterconnectionAnalysis& analysis,
                                   const std::vector<double>& times, Index l) {
    std::vector<JetSample> samples;
    samples.reserve(times.size());
    for (double t : times) samples.push_back(ct_jet(plant, gen, analysis, t, l));
    return samples;
}

CtHankel ct_hankel(const std::vector<JetSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("ct_hankel: need at least one sample");
    const Index l = samples.front().u_jet.size();
    for (const JetSample& s : samples)
        if (s.u_jet.size() != l || s.y_jet.size() != l)
            throw std::invalid_argument("ct_hankel: inconsistent jet lengths");

    CtHankel h;
    h.depth_l = l;
    h.matrix.resize(2 * l, static_cast<Index>(samples.size()));
    h.sample_times.reserve(samples.size());
    for (std::size_t j = 0; j < samples.size(); ++j) {
        h.matrix.col(static_cast<Index>(j)).head(l) = samples[j].u_jet;
        h.matrix.col(static_cast<Index>(j)).tail(l) = samples[j].y_jet;
        h.sample_times.push_back(samples[j].time);
    }
    return h;
}

InformativityVerdict ct_is_informative(const std::vector<JetSample>& samples, Index l,
                                       const LtiSystem& plant, std::optional<double> tol) {
    const CtHankel h = ct_hankel(samples);
    if (h.depth_l != l) throw std::invalid_argument("ct_is_informative: jet length != l");

    const Index required = behavior_dimension(plant, l);
    const RankReport rr = numerical_rank(h.matrix, tol);
    InformativityVerdict v;
    v.rank_achieved = rr.rank;
    v.rank_required = required;
    v.informative = rr.rank == required;
    v.tolerance_used = rr.tolerance_used;
    if (v.informative) {
        v.margin = rr.rank > 0 ? rr.singular_values[static_cast<std::size_t>(rr.rank - 1)]
                               : std::numeric_limits<double>::infinity();
    } else {
        const double deciding =
            required >= 1 && required <= static_cast<Index>(rr.singular_values.size())
                ? rr.singular_values[static_cast<std::size_t>(required - 1)]
                : 0.0;
        v.margin = rr.tolerance_used - deciding;
    }
    return v;
}

TheoremOneVerdict classify_theorem2(const LtiSystem& plant, const SignalGenerator& gen,
                                    const Vector& x0, Index l) {
    if (plant.time_domain != TimeDomain::Continuous ||
        gen.time_domain != TimeDomain::Continuous)
        throw std::invalid_argument("classify_theorem2: plant and generator must be continuous-time");
    if (l < 1) throw std::invalid_argument("classify_theorem2: l must be >= 1");
    const AssumptionReport rep = check_assumptions(gen, &plant);
    if (!rep.obs_lg_sg) throw AssumptionViolation("classify_theorem2: Assumption 1 violated");
    if (!rep.ctrb_sg_w0) throw AssumptionViolation("classify_theorem2: Assumption 2 violated");
    if (!rep.spectra_disjoint->disjoint)
        throw AssumptionViolation("classify_theorem2: Assumption 3 violated");

    const InterconnectionAnalysis analysis = analyze_interconnection(plant, gen, x0);
    const Index n = plant.order();
    const Index n_g = gen.dimension();

    TheoremOneVerdict verdict;
    verdict.t_sufficient = true;  // any T > 0 suffices in continuous time
    if (n_g < l) {
        verdict.case_label = CaseLabel::A;
        verdict.prediction = InformativityPrediction::NeverForAnyX0;
    } else if (n_g < l + n) {
        verdict.case_label = CaseLabel::B;
        verdict.prediction = InformativityPrediction::AlmostAllX0NotInE2;
        verdict.e2_member = in_e2(plant, analysis, x0, l);
    } else {
        verdict.case_label = CaseLabel::C;
        verdict.prediction = InformativityPrediction::AllX0;
        verdict.e2_member = in_e2(plant, analysis, x0, l);
    }
    return verdict;
}

std::vector<double> chebyshev_times(Index k, double t_final) {
    if (k < 1 || t_final <= 0.0) throw std::invalid_argument("chebyshev_times: bad arguments");
    std::vector<double> times(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) {
        const double x = std::cos(M_PI * (2.0 * static_cast<double>(i) + 1.0) /
                                  (2.0 * static_cast<double>(k)));
        times[static_cast<std::size_t>(i)] = 0.5 * t_final * (1.0 - x);
    }
    std::sort(times.begin(), times.end());
    return times;
}

std::vector<double> equispaced_times(Index k, double t_final) {
    if (k < 1 || t_final <= 0.0) throw std::invalid_argument("equispaced_times: bad arguments");
    std::vector<double> times(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i)
        times[static_cast<std::size_t>(i)] =
            t_final * static_cast<double>(i + 1) / static_cast<double>(k + 1);
    return times;
}

std::vector<double> uniform_random_times(Index k, double t_final, Rng& rng) {
    if (k < 1 || t_final <= 0.0) throw std::invalid_argument("uniform_random_times: bad arguments");
    std::vector<double> times(static_cast<std::size_t>(k));
    for (auto& t : times) t = t_final * rng.uniform();
    std::sort(times.begin(), times.end());
    return times;
}

}  // namespace siginform
