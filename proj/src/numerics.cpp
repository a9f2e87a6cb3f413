#include "siginform/numerics.hpp"

#include <limits>
#include <stdexcept>

namespace siginform {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool is_finite(const Matrix& m) { return m.allFinite(); }

double default_rank_tolerance(const Matrix& m, double sigma_max) {
    const double dim = static_cast<double>(std::max(m.rows(), m.cols()));
    return dim * std::numeric_limits<double>::epsilon() * sigma_max;
}

RankReport numerical_rank(const Matrix& m, std::optional<double> tol) {
    if (!is_finite(m)) throw std::invalid_argument("numerical_rank: matrix has non-finite entries");

    RankReport rep;
    if (m.rows() == 0 || m.cols() == 0) {
        rep.tolerance_used = tol.value_or(0.0);
        rep.gap_ratio = kInf;
        return rep;
    }

    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    rep.singular_values.assign(sv.data(), sv.data() + sv.size());

    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    rep.tolerance_used = tol ? *tol : default_rank_tolerance(m, sigma_max);

    Index r = 0;
    while (r < sv.size() && sv(r) > rep.tolerance_used) ++r;
    rep.rank = r;

    if (r == 0 || r == sv.size() || sv(r) <= 0.0) {
        rep.gap_ratio = kInf;
    } else {
        rep.gap_ratio = sv(r - 1) / sv(r);
    }
    return rep;
}

Matrix kernel_basis(const Matrix& m, std::optional<double> tol) {
    if (!is_finite(m)) throw std::invalid_argument("kernel_basis: matrix has non-finite entries");
    const Index cols = m.cols();
    if (cols == 0) return Matrix(0, 0);
    if (m.rows() == 0) return Matrix::Identity(cols, cols);

    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    const double t = tol ? *tol : default_rank_tolerance(m, sigma_max);

    Index r = 0;
    while (r < sv.size() && sv(r) > t) ++r;
    return svd.matrixV().rightCols(cols - r);
}

Matrix orthonormal_range(const Matrix& m, std::optional<double> tol) {
    if (!is_finite(m)) throw std::invalid_argument("orthonormal_range: matrix has non-finite entries");
    if (m.rows() == 0 || m.cols() == 0) return Matrix(m.rows(), 0);

    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    const double t = tol ? *tol : default_rank_tolerance(m, sigma_max);

    Index r = 0;
    while (r < sv.size() && sv(r) > t) ++r;
    return svd.matrixU().leftCols(r);
}

double subspace_distance(const Matrix& u, const Matrix& v) {
    if (u.rows() != v.rows())
        throw std::invalid_argument("subspace_distance: ambient dimensions differ");
    const Matrix qu = orthonormal_range(u);
    const Matrix qv = orthonormal_range(v);
    const Index dim = u.rows();
    const Matrix diff = qu * qu.transpose() - qv * qv.transpose();
    if (dim == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(diff);
    return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

Index intersection_dimension(const Matrix& u, const Matrix& v, double tol) {
    if (u.rows() != v.rows())
        throw std::invalid_argument("intersection_dimension: ambient dimensions differ");
    const Matrix qu = orthonormal_range(u);
    const Matrix qv = orthonormal_range(v);
    if (qu.cols() == 0 || qv.cols() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(qu.transpose() * qv);
    const auto& cosines = svd.singularValues();
    Index dim = 0;
    for (Index i = 0; i < cosines.size(); ++i)
        if (cosines(i) >= 1.0 - tol) ++dim;
    return dim;
}

}  // namespace siginform
