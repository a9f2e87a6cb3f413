#include "siginform/siggen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "siginform/errors.hpp"

namespace siginform {

void SignalGenerator::validate() const {
    const Index n_g = s_g.rows();
    if (n_g < 1 || s_g.cols() != n_g)
        throw std::invalid_argument("SignalGenerator: Sg must be square, Ng >= 1");
    if (l_g.rows() != 1 || l_g.cols() != n_g)
        throw std::invalid_argument("SignalGenerator: Lg must be 1 x Ng");
    if (w0.size() != n_g) throw std::invalid_argument("SignalGenerator: w0 must have length Ng");
    if (!is_finite(s_g) || !is_finite(l_g) || !w0.allFinite())
        throw std::invalid_argument("SignalGenerator: non-finite entries");
}

AssumptionReport check_assumptions(const SignalGenerator& gen, const LtiSystem* plant) {
    gen.validate();
    const Index n_g = gen.dimension();

    AssumptionReport rep;
    rep.obs_lg_sg = numerical_rank(observability_matrix(gen.l_g, gen.s_g, n_g)).rank == n_g;
    rep.ctrb_sg_w0 = numerical_rank(controllability_matrix(gen.s_g, gen.w0, n_g)).rank == n_g;

    if (plant != nullptr) {
        plant->validate();
        const Eigen::VectorXcd eig_a = plant->a.eigenvalues();
        const Eigen::VectorXcd eig_s = gen.s_g.eigenvalues();
        double min_gap = std::numeric_limits<double>::infinity();
        for (Index i = 0; i < eig_a.size(); ++i)
            for (Index j = 0; j < eig_s.size(); ++j)
                min_gap = std::min(min_gap, std::abs(eig_a(i) - eig_s(j)));
        const double rho = std::max(eig_a.cwiseAbs().maxCoeff(), eig_s.cwiseAbs().maxCoeff());
        SpectralGapReport gap;
        gap.tolerance = 1e-8 * (1.0 + rho);
        gap.min_gap = min_gap;
        gap.disjoint = min_gap > gap.tolerance;
        rep.spectra_disjoint = gap;
    }
    return rep;
}

std::vector<double> response(const SignalGenerator& gen, Index t_len) {
    gen.validate();
    if (gen.time_domain != TimeDomain::Discrete)
        throw std::invalid_argument("response: generator is not discrete-time");
    if (t_len < 1) throw std::invalid_argument("response: t_len must be >= 1");

    std::vector<double> u(static_cast<std::size_t>(t_len));
    Vector w = gen.w0;
    for (Index t = 0; t < t_len; ++t) {
        u[static_cast<std::size_t>(t)] = (gen.l_g * w)(0, 0);
        w = gen.s_g * w;
    }
    return u;
}

SignalGenerator multisine_generator(const std::vector<double>& freqs, bool bias,
                                    const std::vector<double>& amplitudes,
                                    const std::vector<double>& phases, double bias_amplitude) {
    const std::size_t m = freqs.size();
    if (m == 0 && !bias)
        throw std::invalid_argument("multisine_generator: need at least one frequency or a bias");
    if (!amplitudes.empty() && amplitudes.size() != m)
        throw std::invalid_argument("multisine_generator: amplitude count mismatch");
    if (!phases.empty() && phases.size() != m)
        throw std::invalid_argument("multisine_generator: phase count mismatch");
    for (std::size_t i = 0; i < m; ++i) {
        if (!(freqs[i] > 0.0 && freqs[i] < M_PI))
            throw std::invalid_argument("multisine_generator: frequencies must lie in (0, pi)");
        for (std::size_t j = i + 1; j < m; ++j)
            if (freqs[i] == freqs[j])
                throw std::invalid_argument("multisine_generator: duplicate frequency");
    }

    const Index n_g = static_cast<Index>(2 * m + (bias ? 1 : 0));
    SignalGenerator gen;
    gen.s_g = Matrix::Zero(n_g, n_g);
    gen.l_g = Matrix::Zero(1, n_g);
    gen.w0 = Vector::Zero(n_g);

    // Each block advances the pair (a*cos(th*t+ph), -a*sin(th*t+ph)) one step.
    for (std::size_t i = 0; i < m; ++i) {
        const double th = freqs[i];
        const double amp = amplitudes.empty() ? 1.0 : amplitudes[i];
        const double ph = phases.empty() ? 0.0 : phases[i];
        const Index r = static_cast<Index>(2 * i);
        gen.s_g(r, r) = std::cos(th);
        gen.s_g(r, r + 1) = std::sin(th);
        gen.s_g(r + 1, r) = -std::sin(th);
        gen.s_g(r + 1, r + 1) = std::cos(th);
        gen.l_g(0, r) = 1.0;
        gen.w0(r) = amp * std::cos(ph);
        gen.w0(r + 1) = -amp * std::sin(ph);
    }
    if (bias) {
        gen.s_g(n_g - 1, n_g - 1) = 1.0;
        gen.l_g(0, n_g - 1) = 1.0;
        gen.w0(n_g - 1) = bias_amplitude;
    }
    return gen;
}

Matrix signal_hankel(const std::vector<double>& u, Index k) {
    const Index t_len = static_cast<Index>(u.size());
    if (k < 1) throw std::invalid_argument("signal_hankel: depth must be >= 1");
    if (k > t_len) throw std::invalid_argument("signal_hankel: depth exceeds signal length");
    Matrix h(k, t_len - k + 1);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j <= t_len - k; ++j) h(i, j) = u[static_cast<std::size_t>(i + j)];
    return h;
}

Index max_pe_order(const std::vector<double>& u, std::optional<double> tol) {
    const Index t_len = static_cast<Index>(u.size());
    if (t_len < 1) throw std::invalid_argument("max_pe_order: empty signal");
    Index order = 0;
    for (Index k = 1; k <= (t_len + 1) / 2; ++k) {
        if (numerical_rank(signal_hankel(u, k), tol).rank != k) break;
        order = k;
    }
    return order;
}

namespace {

// rank of the depth-k Hankel of u, treating depth > length as an empty matrix
Index hankel_rank_or_zero(const std::vector<double>& u, Index k, std::optional<double> tol) {
    if (k > static_cast<Index>(u.size())) return 0;
    return numerical_rank(signal_hankel(u, k), tol).rank;
}

}  // namespace

SignalGenerator realize_from_signal(const std::vector<double>& u, std::optional<Index> order,
                                    std::optional<double> tol) {
    const Index t_len = static_cast<Index>(u.size());
    if (t_len < 1) throw std::invalid_argument("realize_from_signal: empty signal");

    const Index pe = max_pe_order(u, tol);
    const Index k = order.value_or(pe);
    if (k < 1)
        throw std::invalid_argument(
            "realize_from_signal: signal not generator-representable (zero signal)");
    if (t_len < 2 * k - 1)
        throw std::invalid_argument("realize_from_signal: need T >= 2K-1 samples");
    if (pe != k)
        throw std::invalid_argument(
            "realize_from_signal: signal not generator-representable at this order "
            "(max PE order is " + std::to_string(pe) + ", requested " + std::to_string(k) + ")");

    const std::vector<double> head(u.begin(), u.end() - 1);  // u(0..T-2)
    if (hankel_rank_or_zero(head, k, tol) != hankel_rank_or_zero(u, k + 1, tol))
        throw std::invalid_argument(
            "realize_from_signal: signal not generator-representable at this order "
            "(rank saturation condition fails)");

    // Recursion coefficients: u(t+K) = -xi_{K-1} u(t+K-1) - ... - xi_0 u(t),
    // solved in least squares against the leading Hankel block.
    Vector xi = Vector::Zero(k);
    const Index rows = t_len - k;  // number of recursion equations
    if (rows > 0) {
        const Matrix h_head = signal_hankel(head, k);  // k x (T-k)
        Vector rhs(rows);
        for (Index j = 0; j < rows; ++j) rhs(j) = u[static_cast<std::size_t>(k + j)];
        Eigen::JacobiSVD<Matrix> svd(h_head.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
        Vector neg_xi = svd.solve(rhs);
        // one refinement step; recursions from near-degenerate Hankel blocks
        // are sensitive to the residual of this solve
        neg_xi += svd.solve(rhs - h_head.transpose() * neg_xi);
        const double scale = std::max(1.0, std::abs(*std::max_element(
                                               u.begin(), u.end(),
                                               [](double x, double y) { return std::abs(x) < std::abs(y); })));
        if ((h_head.transpose() * neg_xi - rhs).cwiseAbs().maxCoeff() > 1e-7 * scale)
            throw std::invalid_argument(
                "realize_from_signal: signal not generator-representable at this order "
                "(recursion residual too large)");
        xi = -neg_xi;
    }

    // Companion form with ones on the superdiagonal makes O_K(Lg, Sg) the
    // identity, so w0 is read off the first K samples directly.
    SignalGenerator gen;
    gen.s_g = Matrix::Zero(k, k);
    for (Index i = 0; i + 1 < k; ++i) gen.s_g(i, i + 1) = 1.0;
    for (Index j = 0; j < k; ++j) gen.s_g(k - 1, j) = -xi(j);
    gen.l_g = Matrix::Zero(1, k);
    gen.l_g(0, 0) = 1.0;
    gen.w0 = Vector(k);
    for (Index i = 0; i < k; ++i) gen.w0(i) = u[static_cast<std::size_t>(i)];

    const std::vector<double> check = response(gen, t_len);
    double max_abs = 0.0, max_err = 0.0;
    for (Index t = 0; t < t_len; ++t) {
        max_abs = std::max(max_abs, std::abs(u[static_cast<std::size_t>(t)]));
        max_err = std::max(max_err, std::abs(check[static_cast<std::size_t>(t)] -
                                             u[static_cast<std::size_t>(t)]));
    }
    if (max_err > 1e-6 * std::max(1.0, max_abs))
        throw std::invalid_argument(
            "realize_from_signal: signal not generator-representable at this order "
            "(reproduction check fails)");
    return gen;
}

bool lemma1_equivalence_check(const SignalGenerator& gen, Index t_len, std::optional<double> tol) {
    const AssumptionReport rep = check_assumptions(gen);
    if (!rep.obs_lg_sg) throw AssumptionViolation("lemma1_equivalence_check: (Lg,Sg) unobservable");
    if (!rep.ctrb_sg_w0)
        throw AssumptionViolation("lemma1_equivalence_check: (Sg,w0) uncontrollable");
    const Index n_g = gen.dimension();
    if (t_len < 2 * n_g - 1)
        throw std::invalid_argument("lemma1_equivalence_check: need t_len >= 2*Ng - 1");

    const std::vector<double> u = response(gen, t_len);
    if (max_pe_order(u, tol) != n_g) return false;
    const std::vector<double> head(u.begin(), u.end() - 1);
    return hankel_rank_or_zero(head, n_g, tol) == hankel_rank_or_zero(u, n_g + 1, tol);
}

SignalGenerator random_generator(Index n_g, Rng& rng, TimeDomain domain) {
    if (n_g < 1) throw std::invalid_argument("random_generator: Ng must be >= 1");
    constexpr int kMaxDraws = 1000;
    for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
        const Matrix g = rng.normal_matrix(n_g, n_g);
        Eigen::HouseholderQR<Matrix> qr(g);
        Matrix q = qr.householderQ();
        const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Index j = 0; j < n_g; ++j)
            if (r(j, j) < 0.0) q.col(j) *= -1.0;

        SignalGenerator gen;
        gen.s_g = q;
        gen.l_g = rng.normal_matrix(1, n_g);
        gen.w0 = rng.normal_vector(n_g);
        gen.time_domain = domain;
        if (check_assumptions(gen).generator_ok()) return gen;
    }
    throw std::runtime_error("random_generator: rejection cap (1000 draws) exceeded");
}

}  // namespace siginform
