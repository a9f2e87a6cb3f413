#include "siginform/hankel.hpp"

#include <stdexcept>

#include "siginform/siggen.hpp"

namespace siginform {

IoHankel io_hankel(const Trajectory& traj, Index l) {
    const Index t_len = traj.length();
    if (static_cast<Index>(traj.y.size()) != t_len)
        throw std::invalid_argument("io_hankel: input/output length mismatch");
    if (l < 1) throw std::invalid_argument("io_hankel: depth must be >= 1");
    if (l > t_len) throw std::invalid_argument("io_hankel: depth exceeds data length");

    IoHankel h;
    h.depth_l = l;
    h.data_len_t = t_len;
    h.matrix.resize(2 * l, t_len - l + 1);
    h.matrix.topRows(l) = signal_hankel(traj.u, l);
    h.matrix.bottomRows(l) = signal_hankel(traj.y, l);
    return h;
}

namespace {

InformativityVerdict rank_verdict(const Matrix& m, Index required, std::optional<double> tol) {
    const RankReport rr = numerical_rank(m, tol);
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

}  // namespace

InformativityVerdict is_informative(const Trajectory& traj, Index l, const LtiSystem& plant,
                                    std::optional<double> tol) {
    return rank_verdict(io_hankel(traj, l).matrix, behavior_dimension(plant, l), tol);
}

InformativityVerdict is_informative_blind(const Trajectory& traj, Index l, Index assumed_n,
                                          std::optional<double> tol) {
    if (assumed_n < 1) throw std::invalid_argument("is_informative_blind: assumed_n must be >= 1");
    return rank_verdict(io_hankel(traj, l).matrix, l + std::min(l, assumed_n), tol);
}

CaseLabel willems_classify(Index pe_order, Index l, Index n) {
    if (pe_order < 0) throw std::invalid_argument("willems_classify: pe_order must be >= 0");
    if (l < 1 || n < 1) throw std::invalid_argument("willems_classify: l, n must be >= 1");
    if (pe_order < l) return CaseLabel::A;
    if (pe_order < l + n) return CaseLabel::B;
    return CaseLabel::C;
}

}  // namespace siginform
