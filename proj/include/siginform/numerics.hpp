#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace siginform {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using Index = Eigen::Index;

/// Result of a tolerance-aware rank decision.
struct RankReport {
    Index rank = 0;
    std::vector<double> singular_values;  // descending
    double tolerance_used = 0.0;
    // sigma_rank / sigma_{rank+1}; +inf when the cutoff is exact (all values
    // retained, none retained, or the first discarded value is exactly zero).
    double gap_ratio = 0.0;
};

bool is_finite(const Matrix& m);

/// max(rows, cols) * machine epsilon * sigma_max
double default_rank_tolerance(const Matrix& m, double sigma_max);

/// Numerical rank via SVD. Singular values strictly above the tolerance are
/// retained; an explicit `tol` overrides the relative default (useful for
/// trials near measure-zero sets where the cutoff must be tunable).
RankReport numerical_rank(const Matrix& m, std::optional<double> tol = std::nullopt);

/// Orthonormal basis of the numerical null space, m.cols() x (cols - rank).
Matrix kernel_basis(const Matrix& m, std::optional<double> tol = std::nullopt);

/// Orthonormal basis of the numerical column space, m.rows() x rank.
Matrix orthonormal_range(const Matrix& m, std::optional<double> tol = std::nullopt);

/// Spectral-norm distance between the orthogonal projectors onto the column
/// spaces of u and v. Zero iff the spans coincide.
double subspace_distance(const Matrix& u, const Matrix& v);

/// Dimension of span(u) ∩ span(v), counted as the number of principal angles
/// with cosine above 1 - tol.
Index intersection_dimension(const Matrix& u, const Matrix& v, double tol = 1e-8);

}  // namespace siginform
