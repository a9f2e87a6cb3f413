#include <doctest.h>

#include "exact_rank.hpp"
#include "siginform/numerics.hpp"
#include "siginform/random.hpp"

using namespace siginform;

TEST_CASE("numerical_rank on reference matrices") {
    SUBCASE("identity") {
        const RankReport rep = numerical_rank(Matrix::Identity(3, 3));
        CHECK(rep.rank == 3);
        CHECK(rep.gap_ratio == std::numeric_limits<double>::infinity());
    }

    SUBCASE("zero matrix") {
        const RankReport rep = numerical_rank(Matrix::Zero(2, 4));
        CHECK(rep.rank == 0);
        CHECK(rep.singular_values.size() == 2);
    }

    SUBCASE("proportional rows collapse to rank 1") {
        const Matrix m = (Matrix(2, 2) << 1, 2, 2, 4).finished();
        const RankReport rep = numerical_rank(m);
        CHECK(rep.rank == 1);
        // second singular value sits below the cutoff
        CHECK(rep.singular_values[1] <= rep.tolerance_used);
    }

    SUBCASE("empty matrix") {
        const RankReport rep = numerical_rank(Matrix(0, 3));
        CHECK(rep.rank == 0);
        CHECK(rep.singular_values.empty());
    }

    SUBCASE("non-finite entries rejected") {
        Matrix m = Matrix::Identity(2, 2);
        m(0, 1) = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(numerical_rank(m), std::invalid_argument);
    }

    SUBCASE("absolute tolerance override") {
        const Matrix m = (Matrix(2, 2) << 1.0, 0.0, 0.0, 1e-6).finished();
        CHECK(numerical_rank(m).rank == 2);
        CHECK(numerical_rank(m, 1e-3).rank == 1);
        CHECK(numerical_rank(m, 1e-3).tolerance_used == 1e-3);
    }
}

TEST_CASE("kernel_basis") {
    SUBCASE("full-rank matrix has empty kernel") {
        const Matrix k = kernel_basis(Matrix::Identity(2, 2));
        CHECK(k.rows() == 2);
        CHECK(k.cols() == 0);
    }

    SUBCASE("zero row vector has a full orthonormal kernel") {
        const Matrix k = kernel_basis(Matrix::Zero(1, 3));
        REQUIRE(k.rows() == 3);
        REQUIRE(k.cols() == 3);
        CHECK((k.transpose() * k - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("one constraint leaves a two-dimensional kernel") {
        const Matrix m = (Matrix(1, 3) << 1, 1, 0).finished();
        const Matrix k = kernel_basis(m);
        REQUIRE(k.rows() == 3);
        REQUIRE(k.cols() == 2);
        CHECK((m * k).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((k.transpose() * k - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("rank properties on random matrices") {
    Rng rng(42);

    SUBCASE("rank is transpose-invariant") {
        for (int trial = 0; trial < 100; ++trial) {
            const Index r = 1 + static_cast<Index>(rng.next_u64() % 5);
            const Index c = 1 + static_cast<Index>(rng.next_u64() % 5);
            const Matrix m = rng.normal_matrix(r, c);
            CHECK(numerical_rank(m).rank == numerical_rank(m.transpose()).rank);
        }
    }

    SUBCASE("kernel residual stays within 10x tolerance") {
        for (int trial = 0; trial < 100; ++trial) {
            const Index r = 1 + static_cast<Index>(rng.next_u64() % 5);
            const Index c = 1 + static_cast<Index>(rng.next_u64() % 5);
            // mix in rank-deficient cases via outer products
            Matrix m = rng.normal_matrix(r, 1) * rng.normal_matrix(1, c);
            if (trial % 2 == 0) m += rng.normal_matrix(r, c);
            const RankReport rep = numerical_rank(m);
            const Matrix k = kernel_basis(m);
            if (k.cols() == 0) continue;
            CHECK((m * k).cwiseAbs().maxCoeff() <=
                  10.0 * std::max(rep.tolerance_used, 1e-300) * std::max(1.0, m.cwiseAbs().maxCoeff()));
        }
    }

    SUBCASE("product rank is bounded by factor ranks") {
        for (int trial = 0; trial < 100; ++trial) {
            const Index r = 1 + static_cast<Index>(rng.next_u64() % 4);
            const Index mid = 1 + static_cast<Index>(rng.next_u64() % 4);
            const Index c = 1 + static_cast<Index>(rng.next_u64() % 4);
            const Matrix m1 = rng.normal_matrix(r, mid);
            const Matrix m2 = rng.normal_matrix(mid, c);
            CHECK(numerical_rank(m1 * m2).rank <=
                  std::min(numerical_rank(m1).rank, numerical_rank(m2).rank));
        }
    }
}

TEST_CASE("numerical_rank agrees with the exact-fraction oracle") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Index r = 1 + static_cast<Index>(rng.next_u64() % 6);
        const Index c = 1 + static_cast<Index>(rng.next_u64() % 6);
        std::vector<std::vector<long long>> ints(static_cast<std::size_t>(r),
                                                 std::vector<long long>(static_cast<std::size_t>(c)));
        Matrix m(r, c);
        for (Index i = 0; i < r; ++i) {
            for (Index j = 0; j < c; ++j) {
                const long long v = static_cast<long long>(rng.next_u64() % 7) - 3;
                ints[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
                m(i, j) = static_cast<double>(v);
            }
        }
        CHECK(numerical_rank(m).rank == exact_integer_rank(ints));
    }
}

TEST_CASE("subspace utilities") {
    const Matrix e12 = (Matrix(3, 2) << 1, 0, 0, 1, 0, 0).finished();
    const Matrix e23 = (Matrix(3, 2) << 0, 0, 1, 0, 0, 1).finished();

    CHECK(subspace_distance(e12, e12) < 1e-14);
    CHECK(subspace_distance(e12, e23) == doctest::Approx(1.0));
    CHECK(intersection_dimension(e12, e23) == 1);
    CHECK(intersection_dimension(e12, e12) == 2);

    // rotated basis spans the same plane
    Rng rng(3);
    const Matrix mix = e12 * rng.normal_matrix(2, 2);
    CHECK(subspace_distance(e12, mix) < 1e-12);
}
