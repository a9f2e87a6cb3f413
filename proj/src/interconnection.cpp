#include "siginform/interconnection.hpp"

#include <stdexcept>

#include "siginform/errors.hpp"

namespace siginform {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix res(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            res.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return res;
}

// Solves X*M = Y for X given invertible M (via M^T X^T = Y^T).
Matrix solve_right(const Matrix& y, const Matrix& m) {
    return m.transpose().colPivHouseholderQr().solve(y.transpose()).transpose();
}

}  // namespace

Matrix InterconnectionAnalysis::pi1(Index l) const {
    if (l < 1 || l > pi_partition.cols())
        throw std::invalid_argument("pi1: split point out of range");
    return pi_partition.leftCols(l);
}

Matrix InterconnectionAnalysis::pi2(Index l) const {
    if (l < 1 || l > pi_partition.cols())
        throw std::invalid_argument("pi2: undefined when Ng < L");
    return pi_partition.rightCols(pi_partition.cols() - l);
}

Matrix solve_sylvester(const LtiSystem& plant, const SignalGenerator& gen) {
    plant.validate();
    const AssumptionReport rep = check_assumptions(gen, &plant);
    if (!rep.obs_lg_sg)
        throw AssumptionViolation("solve_sylvester: Assumption 1 violated, (Lg,Sg) unobservable");
    if (!rep.spectra_disjoint->disjoint)
        throw AssumptionViolation("solve_sylvester: Assumption 3 violated, spectra of A and Sg "
                                  "closer than the gap tolerance");
    const Index n = plant.order();
    if (numerical_rank(controllability_matrix(plant.a, plant.b, n)).rank != n)
        throw AssumptionViolation("solve_sylvester: (A,B) uncontrollable");

    const Index n_g = gen.dimension();
    const Matrix lhs = kron(Matrix::Identity(n_g, n_g), plant.a) -
                       kron(gen.s_g.transpose(), Matrix::Identity(n, n));
    const Matrix bl = plant.b * gen.l_g;  // n x Ng
    Vector rhs(n * n_g);
    for (Index j = 0; j < n_g; ++j) rhs.segment(j * n, n) = -bl.col(j);

    const Vector sol = lhs.colPivHouseholderQr().solve(rhs);
    Matrix pi(n, n_g);
    for (Index j = 0; j < n_g; ++j) pi.col(j) = sol.segment(j * n, n);

    const double residual = (plant.a * pi + bl - pi * gen.s_g).norm();
    const double scale = plant.a.norm() * pi.norm() + bl.norm();
    if (residual > 1e-10 * std::max(1.0, scale))
        throw AssumptionViolation("solve_sylvester: residual check failed (near-degenerate "
                                  "spectral separation)");
    return pi;
}

Matrix moment(const LtiSystem& plant, const Matrix& pi, const SignalGenerator& gen) {
    if (pi.rows() != plant.order() || pi.cols() != gen.dimension())
        throw std::invalid_argument("moment: Pi dimension mismatch");
    return plant.c * pi + plant.d * gen.l_g;
}

Vector characteristic_polynomial(const Matrix& a) {
    const Index n = a.rows();
    if (a.cols() != n || n < 1)
        throw std::invalid_argument("characteristic_polynomial: A must be square, n >= 1");
    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
    Vector coeffs(n);
    Matrix m = Matrix::Zero(n, n);
    double c_prev = 1.0;
    for (Index k = 1; k <= n; ++k) {
        m = a * m + c_prev * Matrix::Identity(n, n);
        c_prev = -(a * m).trace() / static_cast<double>(k);
        coeffs(n - k) = c_prev;
    }
    return coeffs;
}

Matrix gamma_solution(const Vector& alpha, const Vector& xi) {
    const Index n = alpha.size();
    const Index n_g = xi.size();
    if (n < 1 || n_g < 1) throw std::invalid_argument("gamma_solution: empty coefficient list");

    Matrix f = Matrix::Zero(n, n);  // column companion of alpha
    for (Index i = 0; i + 1 < n; ++i) f(i + 1, i) = 1.0;
    for (Index i = 0; i < n; ++i) f(i, n - 1) = -alpha(i);

    Matrix g = Matrix::Zero(n_g, n_g);  // row companion of xi
    for (Index i = 0; i + 1 < n_g; ++i) g(i, i + 1) = 1.0;
    for (Index j = 0; j < n_g; ++j) g(n_g - 1, j) = -xi(j);

    const Matrix lhs =
        kron(Matrix::Identity(n_g, n_g), f) - kron(g.transpose(), Matrix::Identity(n, n));
    Matrix e = Matrix::Zero(n, n_g);
    e(0, 0) = 1.0;
    Vector rhs(n * n_g);
    for (Index j = 0; j < n_g; ++j) rhs.segment(j * n, n) = -e.col(j);

    Eigen::FullPivLU<Matrix> lu(lhs);
    if (!lu.isInvertible())
        throw AssumptionViolation("gamma_solution: shared characteristic roots, singular system");
    const Vector sol = lu.solve(rhs);
    Matrix gamma(n, n_g);
    for (Index j = 0; j < n_g; ++j) gamma.col(j) = sol.segment(j * n, n);
    return gamma;
}

InterconnectionAnalysis analyze_interconnection(const LtiSystem& plant,
                                                const SignalGenerator& gen, const Vector& x0) {
    if (plant.time_domain != gen.time_domain)
        throw std::invalid_argument("analyze_interconnection: time-domain mismatch");
    if (x0.size() != plant.order())
        throw std::invalid_argument("analyze_interconnection: x0 dimension mismatch");

    InterconnectionAnalysis analysis;
    analysis.pi = solve_sylvester(plant, gen);
    analysis.m_g = moment(plant, analysis.pi, gen);
    analysis.pi_w0 = analysis.pi * gen.w0;
    analysis.x_bar0 = x0 - analysis.pi_w0;

    const Matrix bl = plant.b * gen.l_g;
    analysis.sylvester_residual = (plant.a * analysis.pi + bl - analysis.pi * gen.s_g).norm();
    analysis.gap = *check_assumptions(gen, &plant).spectra_disjoint;

    const Matrix obs_gen = observability_matrix(gen.l_g, gen.s_g, gen.dimension());
    analysis.pi_partition = solve_right(analysis.pi, obs_gen);
    analysis.gamma = gamma_solution(characteristic_polynomial(plant.a),
                                    characteristic_polynomial(gen.s_g));
    return analysis;
}

Matrix build_ll(const LtiSystem& plant, const SignalGenerator& gen,
                const InterconnectionAnalysis& analysis, Index l) {
    if (l < 1) throw std::invalid_argument("build_ll: l must be >= 1");
    const Index n = plant.order();
    const Index n_g = gen.dimension();
    Matrix ll = Matrix::Zero(2 * l, n_g + n);
    ll.topLeftCorner(l, n_g) = observability_matrix(gen.l_g, gen.s_g, l);
    ll.bottomLeftCorner(l, n_g) = observability_matrix(analysis.m_g, gen.s_g, l);
    ll.bottomRightCorner(l, n) = observability_matrix(plant.c, plant.a, l);
    return ll;
}

Matrix build_r(const SignalGenerator& gen, const LtiSystem& plant, const Vector& w0,
               const Vector& x_bar0, Index cols) {
    if (cols < 1) throw std::invalid_argument("build_r: cols must be >= 1");
    const Index n = plant.order();
    const Index n_g = gen.dimension();
    Matrix r(n_g + n, cols);
    r.topRows(n_g) = controllability_matrix(gen.s_g, w0, cols);
    r.bottomRows(n) = controllability_matrix(plant.a, x_bar0, cols);
    return r;
}

Matrix markov_toeplitz(const LtiSystem& plant, Index l) {
    plant.validate();
    if (l < 1) throw std::invalid_argument("markov_toeplitz: l must be >= 1");
    // First column D, CB, CAB, ..., CA^{L-2}B.
    Vector markov(l);
    markov(0) = plant.d;
    RowVector cur = plant.c.row(0);
    for (Index i = 1; i < l; ++i) {
        markov(i) = (cur * plant.b)(0, 0);
        cur = cur * plant.a;
    }
    Matrix t = Matrix::Zero(l, l);
    for (Index i = 0; i < l; ++i)
        for (Index j = 0; j <= i; ++j) t(i, j) = markov(i - j);
    return t;
}

namespace {

MembershipTest rank_deficiency_test(const Matrix& m, Index n) {
    const RankReport rr = numerical_rank(m);
    MembershipTest t;
    t.member = rr.rank < n;
    // n-th singular value: distance from the rank-deficient set.
    t.margin = static_cast<Index>(rr.singular_values.size()) >= n
                   ? rr.singular_values[static_cast<std::size_t>(n - 1)]
                   : 0.0;
    t.tolerance_used = rr.tolerance_used;
    return t;
}

}  // namespace

MembershipTest in_e1(const LtiSystem& plant, const InterconnectionAnalysis& analysis,
                     const Vector& x0) {
    const Index n = plant.order();
    if (x0.size() != n) throw std::invalid_argument("in_e1: x0 dimension mismatch");
    const Vector x_bar0 = x0 - analysis.pi_w0;
    return rank_deficiency_test(controllability_matrix(plant.a, x_bar0, n), n);
}

MembershipTest in_e2(const LtiSystem& plant, const InterconnectionAnalysis& analysis,
                     const Vector& x0, Index l) {
    const Index n = plant.order();
    if (x0.size() != n) throw std::invalid_argument("in_e2: x0 dimension mismatch");
    if (l < 1 || l > analysis.pi_partition.cols())
        throw std::invalid_argument("in_e2: E2 undefined when Ng < L");
    const Vector x_bar0 = x0 - analysis.pi_w0;
    const Matrix pi2 = analysis.pi2(l);
    Matrix m(n, n + pi2.cols());
    m.leftCols(n) = controllability_matrix(plant.a, x_bar0, n);
    m.rightCols(pi2.cols()) = pi2;
    return rank_deficiency_test(m, n);
}

TheoremOneVerdict classify_theorem1(const LtiSystem& plant, const SignalGenerator& gen,
                                    const Vector& x0, Index l, Index t_len) {
    if (l < 1) throw std::invalid_argument("classify_theorem1: l must be >= 1");
    const AssumptionReport rep = check_assumptions(gen, &plant);
    if (!rep.obs_lg_sg)
        throw AssumptionViolation("classify_theorem1: Assumption 1 violated");
    if (!rep.ctrb_sg_w0)
        throw AssumptionViolation("classify_theorem1: Assumption 2 violated");
    if (!rep.spectra_disjoint->disjoint)
        throw AssumptionViolation("classify_theorem1: Assumption 3 violated");

    const InterconnectionAnalysis analysis = analyze_interconnection(plant, gen, x0);
    const Index n = plant.order();
    const Index n_g = gen.dimension();

    TheoremOneVerdict verdict;
    verdict.t_sufficient = t_len >= n_g + n + l - 1;
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

BigGenerator big_generator(const LtiSystem& plant, const SignalGenerator& gen,
                           const InterconnectionAnalysis& analysis) {
    const Index n = plant.order();
    const Index n_g = gen.dimension();
    BigGenerator big;
    big.s = Matrix::Zero(n_g + n, n_g + n);
    big.s.topLeftCorner(n_g, n_g) = gen.s_g;
    big.s.bottomRightCorner(n, n) = plant.a;
    big.l = Matrix::Zero(2, n_g + n);
    big.l.block(0, 0, 1, n_g) = gen.l_g;
    big.l.block(1, 0, 1, n_g) = analysis.m_g;
    big.l.block(1, n_g, 1, n) = plant.c;
    big.w0 = Vector(n_g + n);
    big.w0.head(n_g) = gen.w0;
    big.w0.tail(n) = analysis.x_bar0;
    return big;
}

Matrix big_generator_response(const BigGenerator& gen, Index t_len) {
    if (t_len < 1) throw std::invalid_argument("big_generator_response: t_len must be >= 1");
    Matrix out(2, t_len);
    Vector w = gen.w0;
    for (Index t = 0; t < t_len; ++t) {
        out.col(t) = gen.l * w;
        w = gen.s * w;
    }
    return out;
}

namespace {

// Smallest-singular-vector refinement of a real left eigenpair of A, with a
// Rayleigh-quotient update in between. Keeps the annihilation residual of
// zeta^T A^k near machine precision.
Vector refine_left_eigenvector(const Matrix& a, double lambda) {
    const Index n = a.rows();
    Vector zeta = Vector::Zero(n);
    for (int iter = 0; iter < 2; ++iter) {
        const Matrix shifted = a.transpose() - lambda * Matrix::Identity(n, n);
        Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
        zeta = svd.matrixV().col(n - 1);
        lambda = zeta.dot(a.transpose() * zeta);
    }
    return zeta;
}

}  // namespace

std::optional<Vector> construct_e2_member(const LtiSystem& plant, const SignalGenerator& gen,
                                          const InterconnectionAnalysis& analysis, Index l,
                                          Rng& rng) {
    const Index n = plant.order();
    const Index n_g = gen.dimension();
    if (n_g < l) return std::nullopt;
    const Matrix pi2 = analysis.pi2(l);

    const Eigen::EigenSolver<Matrix> es(plant.a.transpose());
    for (Index i = 0; i < n; ++i) {
        const std::complex<double> lambda = es.eigenvalues()(i);
        if (std::abs(lambda.imag()) > 1e-9 * (1.0 + std::abs(lambda))) continue;
        const Vector zeta = refine_left_eigenvector(plant.a, lambda.real());
        if (pi2.cols() > 0 &&
            (zeta.transpose() * pi2).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + pi2.norm()))
            continue;
        // Any x_bar0 orthogonal to zeta gives zeta^T C(A, x_bar0) = 0. Checked
        // against the actual membership test before returning, so callers get
        // a certified member; a candidate can miss when the eigenvalue is too
        // defective for the annihilation to survive in floating point.
        for (int draw = 0; draw < 4; ++draw) {
            Vector r = rng.normal_vector(n);
            r -= zeta * zeta.dot(r);
            const Vector x0 = analysis.pi_w0 + r;
            if (in_e2(plant, analysis, x0, l).member) return x0;
        }
    }
    return std::nullopt;
}

}  // namespace siginform
