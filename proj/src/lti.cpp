#include "siginform/lti.hpp"

#include <stdexcept>

namespace siginform {

void LtiSystem::validate() const {
    const Index n = a.rows();
    if (n < 1 || a.cols() != n) throw std::invalid_argument("LtiSystem: A must be square, n >= 1");
    if (b.rows() != n || b.cols() != 1) throw std::invalid_argument("LtiSystem: B must be n x 1");
    if (c.rows() != 1 || c.cols() != n) throw std::invalid_argument("LtiSystem: C must be 1 x n");
    if (!is_finite(a) || !is_finite(b) || !is_finite(c) || !std::isfinite(d))
        throw std::invalid_argument("LtiSystem: non-finite entries");
}

Matrix controllability_matrix(const Matrix& a, const Matrix& b, Index k) {
    const Index n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("controllability_matrix: A must be square");
    if (b.rows() != n || b.cols() != 1)
        throw std::invalid_argument("controllability_matrix: B must be n x 1");
    if (k < 0) k = n;
    if (k < 1) throw std::invalid_argument("controllability_matrix: k must be >= 1");

    Matrix res(n, k);
    Vector cur = b.col(0);
    for (Index j = 0; j < k; ++j) {
        res.col(j) = cur;
        if (j + 1 < k) cur = a * cur;
    }
    return res;
}

Matrix observability_matrix(const Matrix& c, const Matrix& a, Index k) {
    const Index n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("observability_matrix: A must be square");
    if (c.rows() != 1 || c.cols() != n)
        throw std::invalid_argument("observability_matrix: C must be 1 x n");
    if (k < 0) k = n;
    if (k < 1) throw std::invalid_argument("observability_matrix: k must be >= 1");

    Matrix res(k, n);
    RowVector cur = c.row(0);
    for (Index i = 0; i < k; ++i) {
        res.row(i) = cur;
        if (i + 1 < k) cur = cur * a;
    }
    return res;
}

MinimalityReport is_minimal(const LtiSystem& sys) {
    sys.validate();
    const Index n = sys.order();
    MinimalityReport rep;
    rep.ctrb_rank = numerical_rank(controllability_matrix(sys.a, sys.b, n)).rank;
    rep.obsv_rank = numerical_rank(observability_matrix(sys.c, sys.a, n)).rank;
    rep.minimal = (rep.ctrb_rank == n) && (rep.obsv_rank == n);
    return rep;
}

DtSimulation simulate_dt(const LtiSystem& sys, const std::vector<double>& u, const Vector& x0) {
    sys.validate();
    if (sys.time_domain != TimeDomain::Discrete)
        throw std::invalid_argument("simulate_dt: system is not discrete-time");
    if (x0.size() != sys.order())
        throw std::invalid_argument("simulate_dt: x0 dimension mismatch");
    if (u.empty()) throw std::invalid_argument("simulate_dt: empty input");

    const Index t_len = static_cast<Index>(u.size());
    DtSimulation sim;
    sim.traj.u = u;
    sim.traj.y.resize(u.size());
    sim.states.resize(sys.order(), t_len);

    Vector x = x0;
    for (Index t = 0; t < t_len; ++t) {
        sim.states.col(t) = x;
        sim.traj.y[static_cast<std::size_t>(t)] = (sys.c * x)(0, 0) + sys.d * u[static_cast<std::size_t>(t)];
        x = sys.a * x + sys.b.col(0) * u[static_cast<std::size_t>(t)];
    }
    return sim;
}

Index behavior_dimension(const LtiSystem& sys, Index l) {
    sys.validate();
    if (l < 1) throw std::invalid_argument("behavior_dimension: l must be >= 1");
    return l + numerical_rank(observability_matrix(sys.c, sys.a, l)).rank;
}

bool pbh_controllable_from(const Matrix& a, const Vector& x0) {
    const Index n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("pbh_controllable_from: A must be square");
    if (x0.size() != n) throw std::invalid_argument("pbh_controllable_from: x0 dimension mismatch");
    return numerical_rank(controllability_matrix(a, x0, n)).rank == n;
}

double spectral_radius(const Matrix& a) {
    if (a.rows() == 0) return 0.0;
    return a.eigenvalues().cwiseAbs().maxCoeff();
}

LtiSystem random_minimal_system(Index n, Rng& rng, TimeDomain domain) {
    if (n < 1) throw std::invalid_argument("random_minimal_system: n must be >= 1");
    constexpr int kMaxDraws = 1000;
    for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
        LtiSystem sys;
        sys.a = rng.normal_matrix(n, n);
        sys.b = rng.normal_matrix(n, 1);
        sys.c = rng.normal_matrix(1, n);
        sys.d = rng.normal();
        sys.time_domain = domain;
        const double rho = spectral_radius(sys.a);
        // Land strictly inside the unit disk: rescaling onto the circle parks
        // real eigenvalues exactly at +-1, which collides with unit-circle
        // generator spectra.
        if (rho > 1.0) sys.a /= 1.05 * rho;
        if (is_minimal(sys).minimal) return sys;
    }
    throw std::runtime_error("random_minimal_system: rejection cap (1000 draws) exceeded");
}

}  // namespace siginform
