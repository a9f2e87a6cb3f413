#pragma once

#include <optional>

#include "siginform/lti.hpp"
#include "siginform/numerics.hpp"

namespace siginform {

/// Input-output Hankel matrix of depth L: input L-windows stacked over
/// output L-windows, one column per start time.
struct IoHankel {
    Matrix matrix;  // 2L x (T-L+1)
    Index depth_l = 0;
    Index data_len_t = 0;
};

enum class CaseLabel { A, B, C };

struct InformativityVerdict {
    bool informative = false;
    Index rank_achieved = 0;
    Index rank_required = 0;
    std::optional<CaseLabel> case_label;  // set by the dimension classifiers
    // Smallest retained singular value when informative; distance of the
    // deciding singular value below the threshold otherwise.
    double margin = 0.0;
    double tolerance_used = 0.0;
};

IoHankel io_hankel(const Trajectory& traj, Index l);

/// Rank test of the collected windows against the plant's behavior
/// dimension L + rank(O_L(C,A)).
InformativityVerdict is_informative(const Trajectory& traj, Index l, const LtiSystem& plant,
                                    std::optional<double> tol = std::nullopt);

/// Plant-free variant: assumes a generic observable plant of the given
/// order, so the required rank is L + min(L, assumed_n).
InformativityVerdict is_informative_blind(const Trajectory& traj, Index l, Index assumed_n,
                                          std::optional<double> tol = std::nullopt);

/// Case split of the classical persistency-of-excitation conditions:
/// A when pe_order < L, B when L <= pe_order < L+n, C when pe_order >= L+n.
CaseLabel willems_classify(Index pe_order, Index l, Index n);

}  // namespace siginform
