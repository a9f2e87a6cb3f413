#pragma once

#include <optional>

#include "siginform/hankel.hpp"
#include "siginform/lti.hpp"
#include "siginform/siggen.hpp"

namespace siginform {

/// Everything the plant/generator interconnection determines: the Sylvester
/// solution Pi, the moment row Mg = C*Pi + D*Lg, the offset initial state
/// x(0) - Pi*w(0), the partition of Pi in signal coordinates, and the
/// companion-form factor Gamma.
struct InterconnectionAnalysis {
    Matrix pi;            // n x Ng, solves A*Pi + B*Lg = Pi*Sg
    Matrix m_g;           // 1 x Ng
    Vector x_bar0;        // n, x(0) - Pi*w(0) for the analyzed x(0)
    Vector pi_w0;         // n, Pi*w(0); lets membership tests handle other x(0)
    Matrix pi_partition;  // n x Ng, equals Pi * O_Ng(Lg,Sg)^{-1}
    Matrix gamma;         // n x Ng
    double sylvester_residual = 0.0;
    SpectralGapReport gap;

    /// First l columns of the partition ([Pi1 Pi2] split point).
    Matrix pi1(Index l) const;
    /// Trailing Ng - l columns; n x 0 when Ng == l. Requires l <= Ng.
    Matrix pi2(Index l) const;
};

/// Unique solution of A*Pi + B*Lg = Pi*Sg (dense Kronecker solve with
/// residual verification). Requires (A,B) controllable, (Lg,Sg) observable,
/// and disjoint spectra; throws AssumptionViolation otherwise.
Matrix solve_sylvester(const LtiSystem& plant, const SignalGenerator& gen);

/// Mg = C*Pi + D*Lg; encodes the plant transfer function on sigma(Sg).
Matrix moment(const LtiSystem& plant, const Matrix& pi, const SignalGenerator& gen);

/// Coefficients c of det(zI - a) = z^n + c[n-1] z^{n-1} + ... + c[0]
/// (Faddeev-LeVerrier recursion).
Vector characteristic_polynomial(const Matrix& a);

/// Unique solution of the companion-form equation F*Gamma + e1*e1^T =
/// Gamma*G, where F and G are the companion matrices of the two
/// characteristic polynomials. Throws AssumptionViolation when the
/// polynomials share a root (singular system).
Matrix gamma_solution(const Vector& alpha, const Vector& xi);

/// 2L x (Ng+n) window map [O_L(Lg,Sg), 0; O_L(Mg,Sg), O_L(C,A)].
Matrix build_ll(const LtiSystem& plant, const SignalGenerator& gen,
                const InterconnectionAnalysis& analysis, Index l);

/// (Ng+n) x cols stacked state-trajectory matrix [C_cols(Sg,w0); C_cols(A,x_bar0)].
Matrix build_r(const SignalGenerator& gen, const LtiSystem& plant, const Vector& w0,
               const Vector& x_bar0, Index cols);

/// Lower-triangular Toeplitz of the first L Markov parameters D, CB, CAB, ...
Matrix markov_toeplitz(const LtiSystem& plant, Index l);

struct MembershipTest {
    bool member = false;
    double margin = 0.0;          // smallest singular value of the deciding matrix
    double tolerance_used = 0.0;  // rank tolerance the decision was made at
};

/// x(0) in E1 iff (A, x(0) - Pi*w(0)) fails the Krylov controllability test.
MembershipTest in_e1(const LtiSystem& plant, const InterconnectionAnalysis& analysis,
                     const Vector& x0);

/// x(0) in E2 iff [C(A, x_bar0), Pi2] is rank-deficient. Requires Ng >= l;
/// Pi2 is n x 0 when Ng == l, making E2 coincide with E1 there.
MembershipTest in_e2(const LtiSystem& plant, const InterconnectionAnalysis& analysis,
                     const Vector& x0, Index l);

enum class InformativityPrediction { NeverForAnyX0, AlmostAllX0NotInE2, AllX0 };

struct TheoremOneVerdict {
    CaseLabel case_label = CaseLabel::A;
    InformativityPrediction prediction = InformativityPrediction::NeverForAnyX0;
    std::optional<MembershipTest> e2_member;  // evaluated in cases B and C
    bool t_sufficient = false;                // T >= Ng + n + L - 1
};

InterconnectionAnalysis analyze_interconnection(const LtiSystem& plant,
                                                const SignalGenerator& gen, const Vector& x0);

/// Case split on the generator dimension: A (Ng < L), B (L <= Ng < L+n,
/// informative off the measure-zero set E2), C (Ng >= L+n, informative for
/// every initial state). Requires all three interconnection assumptions.
TheoremOneVerdict classify_theorem1(const LtiSystem& plant, const SignalGenerator& gen,
                                    const Vector& x0, Index l, Index t_len);

/// The interconnection folded into one autonomous system with output (u, y).
struct BigGenerator {
    Matrix s;   // (Ng+n) x (Ng+n), blockdiag(Sg, A)
    Matrix l;   // 2 x (Ng+n), [Lg 0; Mg C]
    Vector w0;  // [w0; x_bar0]
};

BigGenerator big_generator(const LtiSystem& plant, const SignalGenerator& gen,
                           const InterconnectionAnalysis& analysis);

/// Rows are the u and y sequences of the folded system.
Matrix big_generator_response(const BigGenerator& gen, Index t_len);

/// Builds an initial state inside E2 when possible: scans real left
/// eigenvectors zeta of A with zeta^T * Pi2 ~ 0 and returns
/// x0 = (random x_bar0 orthogonal to zeta) + Pi*w0. Returns nullopt when A
/// has no qualifying left eigenvector (caller redraws the instance).
std::optional<Vector> construct_e2_member(const LtiSystem& plant, const SignalGenerator& gen,
                                          const InterconnectionAnalysis& analysis, Index l,
                                          Rng& rng);

}  // namespace siginform
