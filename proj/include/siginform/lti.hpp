#pragma once

#include <vector>

#include "siginform/numerics.hpp"
#include "siginform/random.hpp"

namespace siginform {

enum class TimeDomain { Discrete, Continuous };

/// State-space SISO system x+ = Ax + Bu, y = Cx + Du (discrete), or the
/// corresponding ODE in continuous time.
struct LtiSystem {
    Matrix a;  // n x n
    Matrix b;  // n x 1
    Matrix c;  // 1 x n
    double d = 0.0;
    TimeDomain time_domain = TimeDomain::Discrete;

    Index order() const { return a.rows(); }
    void validate() const;  // throws std::invalid_argument on bad shapes
};

/// Paired input/output sample sequences of equal length.
struct Trajectory {
    std::vector<double> u;
    std::vector<double> y;
    long start_index = 0;

    Index length() const { return static_cast<Index>(u.size()); }
};

struct DtSimulation {
    Trajectory traj;
    Matrix states;  // n x T, states.col(t) = x(t)
};

/// [b, a*b, ..., a^{k-1}*b], n x k. k < 0 means k = n.
Matrix controllability_matrix(const Matrix& a, const Matrix& b, Index k = -1);

/// [c; c*a; ...; c*a^{k-1}], k x n. k < 0 means k = n.
Matrix observability_matrix(const Matrix& c, const Matrix& a, Index k = -1);

struct MinimalityReport {
    bool minimal = false;
    Index ctrb_rank = 0;
    Index obsv_rank = 0;
};

MinimalityReport is_minimal(const LtiSystem& sys);

DtSimulation simulate_dt(const LtiSystem& sys, const std::vector<double>& u, const Vector& x0);

/// dim of the space of input-output L-windows: L + rank(O_L(C, A)).
Index behavior_dimension(const LtiSystem& sys, Index l);

/// True iff the Krylov space of (a, x0) spans the whole state space.
bool pbh_controllable_from(const Matrix& a, const Vector& x0);

double spectral_radius(const Matrix& a);

/// i.i.d. standard-normal entries, rejection-resampled until minimal; A is
/// rescaled to unit spectral radius when larger so long simulations stay
/// bounded. Throws std::runtime_error after 1000 rejected draws.
LtiSystem random_minimal_system(Index n, Rng& rng, TimeDomain domain = TimeDomain::Discrete);

}  // namespace siginform
