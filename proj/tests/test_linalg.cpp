#include "adiwave/error.hpp"
#include "adiwave/linalg.hpp"
#include "adiwave/reference.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace adiwave;

namespace {

DenseMatrix random_matrix(std::size_t r, std::size_t c, unsigned seed)
{
    std::mt19937                           gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseMatrix                            m(r, c);
    for (auto& x : m.values()) {
        x = dist(gen);
    }
    return m;
}

double max_diff(ConstMatrixView a, ConstMatrixView b)
{
    EXPECT_EQ(a.rows(), b.rows());
    EXPECT_EQ(a.cols(), b.cols());
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            d = std::max(d, std::abs(a(i, j) - b(i, j)));
        }
    }
    return d;
}

// 7 x 9 operator with a wide first row and a band of width 3.
BandedOperator sample_operator()
{
    const double stencil[] = {-1.0, 0.5, 2.0};
    return BandedOperator::toeplitz(7, 9, 0, stencil,
                                    {{0, 0, {3.0, -1.0, 4.0, 0.25}}, {6, 5, {1.5, -2.0, 0.5, 7.0}}});
}

} // namespace

TEST(DenseMatrix, BlockViewsWriteThrough)
{
    DenseMatrix m(4, 5);
    m.block(1, 1, 2, 3).fill(2.0);
    EXPECT_EQ(m(1, 1), 2.0);
    EXPECT_EQ(m(2, 3), 2.0);
    EXPECT_EQ(m(0, 0), 0.0);
    EXPECT_EQ(m(3, 4), 0.0);
    EXPECT_THROW((void)m.block(3, 0, 2, 1), ShapeMismatch);
}

TEST(DenseMatrix, Transpose)
{
    const DenseMatrix m = random_matrix(3, 5, 1);
    const DenseMatrix t = m.transposed();
    ASSERT_EQ(t.rows(), 5u);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            EXPECT_EQ(m(i, j), t(j, i));
        }
    }
}

TEST(BandedOperator, DenseFormMatchesEntries)
{
    const BandedOperator op = sample_operator();
    const DenseMatrix    d  = op.to_dense();
    EXPECT_EQ(d(0, 3), 0.25);
    EXPECT_EQ(d(0, 4), 0.0);
    EXPECT_EQ(d(3, 3), -1.0);
    EXPECT_EQ(d(3, 4), 0.5);
    EXPECT_EQ(d(3, 5), 2.0);
    EXPECT_EQ(d(6, 8), 7.0);
    for (std::size_t i = 0; i < op.rows(); ++i) {
        for (std::size_t j = 0; j < op.cols(); ++j) {
            EXPECT_EQ(op.at(i, j), d(i, j));
        }
    }
}

TEST(BandedOperator, RejectsInvalidInput)
{
    const double stencil[] = {1.0, 4.0, 1.0};
    EXPECT_THROW(BandedOperator::toeplitz(5, 5, 1, stencil, {{0, 4, {1.0, 2.0}}}), ShapeMismatch);
    const double bad[] = {1.0, std::nan(""), 1.0};
    EXPECT_THROW(BandedOperator::toeplitz(5, 5, 1, bad, {{0, 0, {1.0}}, {4, 4, {1.0}}}), Error);
    // Band entry falling outside the column range on an unlisted row.
    EXPECT_THROW(BandedOperator::toeplitz(5, 5, 1, stencil, {}), Error);
}

TEST(BandedKernels, MatchDenseProducts)
{
    const BandedOperator op = sample_operator();
    const DenseMatrix    d  = op.to_dense();
    const DenseMatrix    m  = random_matrix(9, 6, 2);
    const DenseMatrix    r  = random_matrix(5, 9, 3);

    EXPECT_LT(max_diff(banded_times_dense(op, m), reference::matmul(d, m)), 1e-14);
    EXPECT_LT(max_diff(dense_times_banded_transpose(r, op), reference::matmul(r, d.transposed())), 1e-14);
    EXPECT_THROW(banded_times_dense(op, r), ShapeMismatch);
}

TEST(BandedKernels, StridedInputsAndOutputs)
{
    const BandedOperator op  = sample_operator();
    DenseMatrix          big = random_matrix(12, 12, 4);
    const DenseMatrix    sub(big.block(1, 2, 9, 4));
    DenseMatrix          out(10, 10);
    apply_left(op, big.block(1, 2, 9, 4), out.block(2, 3, 7, 4));
    EXPECT_LT(max_diff(out.block(2, 3, 7, 4), banded_times_dense(op, sub)), 1e-15);
    EXPECT_EQ(out(0, 0), 0.0);
}

TEST(Tridiagonal, PivotsOfPaddedLaplacianLike)
{
    // (1, 4, 1) of size 5: u_0 = 4, u_i = 4 - 1/u_{i-1}.
    const std::vector<double> lo(4, 1.0), mid(5, 4.0), up(4, 1.0);
    const auto                f        = lu_factor_tridiagonal(lo, mid, up);
    const double              expect[] = {4.0, 15.0 / 4.0, 56.0 / 15.0, 209.0 / 56.0, 780.0 / 209.0};
    ASSERT_EQ(f.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_NEAR(f.pivot()[i], expect[i], 1e-15);
    }
}

TEST(Tridiagonal, ReconstructsCompactOperator)
{
    // P for N = 8: boundary rows (6, 18) / (18, 6), interior (1, 4, 1).
    const std::size_t   n = 9;
    std::vector<double> lo(n - 1, 1.0), mid(n, 4.0), up(n - 1, 1.0);
    mid.front() = mid.back() = 6.0;
    up.front()               = 18.0;
    lo.back()                = 18.0;
    const auto f             = lu_factor_tridiagonal(lo, mid, up);
    EXPECT_LT(max_diff(f.reconstruct(), reference::tridiagonal(lo, mid, up)), 1e-13);
}

TEST(Tridiagonal, ZeroPivotDetected)
{
    const std::vector<double> lo{1.0}, mid{1.0, 1.0}, up{1.0};
    EXPECT_THROW(lu_factor_tridiagonal(lo, mid, up), ZeroPivot);
    const std::vector<double> z{0.0, 1.0};
    EXPECT_THROW(lu_factor_tridiagonal(lo, z, up), ZeroPivot);
}

TEST(Tridiagonal, BatchedSolveMatchesReference)
{
    const std::size_t   n = 11;
    std::vector<double> lo(n - 1, 1.0), mid(n, 4.0), up(n - 1, 1.0);
    mid.front() = 6.0;
    up.front()  = 6.0;
    const auto        f   = lu_factor_tridiagonal(lo, mid, up);
    const DenseMatrix t   = reference::tridiagonal(lo, mid, up);
    const DenseMatrix rhs = random_matrix(n, 7, 5);

    const DenseMatrix x_cols = solve_batched(f, rhs, Orientation::columns);
    EXPECT_LT(max_diff(x_cols, reference::solve(t, rhs)), 1e-13);

    const DenseMatrix rhs_t  = rhs.transposed();
    const DenseMatrix x_rows = solve_batched(f, rhs_t, Orientation::rows);
    EXPECT_LT(max_diff(x_rows, x_cols.transposed()), 1e-15);

    for (std::size_t j = 0; j < 7; ++j) {
        std::vector<double> b(n);
        for (std::size_t i = 0; i < n; ++i) {
            b[i] = rhs(i, j);
        }
        reference::thomas(lo, mid, up, b);
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_NEAR(b[i], x_cols(i, j), 1e-13);
        }
    }
}

TEST(Tridiagonal, ColumnAndRowSolvesAgreeBitwise)
{
    const std::size_t   n = 130;
    std::vector<double> lo(n - 1, 1.0), mid(n, 4.0), up(n - 1, 1.0);
    const auto          f   = lu_factor_tridiagonal(lo, mid, up);
    const DenseMatrix   rhs = random_matrix(n, n, 6);
    const DenseMatrix   a   = solve_batched(f, rhs, Orientation::columns);
    const DenseMatrix   b   = solve_batched(f, rhs.transposed(), Orientation::rows).transposed();
    EXPECT_EQ(max_diff(a, b), 0.0);
}

TEST(Norms, FrobeniusMatchesReferenceAndScales)
{
    const DenseMatrix m = random_matrix(17, 13, 7);
    EXPECT_NEAR(frobenius_norm(m), reference::frobenius_norm(m), 1e-13);
    DenseMatrix scaled(m);
    for (auto& x : scaled.values()) {
        x *= -3.0;
    }
    EXPECT_NEAR(frobenius_norm(scaled), 3.0 * frobenius_norm(m), 1e-12);
    EXPECT_EQ(frobenius_distance(m, m), 0.0);
    EXPECT_EQ(frobenius_norm(DenseMatrix(3, 3)), 0.0);
}

TEST(Norms, IndependentOfWorkerCount)
{
    const DenseMatrix m  = random_matrix(301, 257, 8);
    const double      n1 = frobenius_norm(m, Exec{1});
    for (int w : {2, 3, 4, 8}) {
        EXPECT_EQ(frobenius_norm(m, Exec{w}), n1);
    }
}

TEST(Kernels, ParallelResultsBitwiseEqual)
{
    const BandedOperator op = sample_operator();
    const DenseMatrix    m  = random_matrix(9, 200, 9);
    const DenseMatrix    r  = random_matrix(200, 9, 10);
    const DenseMatrix    a1 = banded_times_dense(op, m, Exec{1});
    const DenseMatrix    b1 = dense_times_banded_transpose(r, op, Exec{1});
    for (int w : {2, 4}) {
        EXPECT_EQ(max_diff(banded_times_dense(op, m, Exec{w}), a1), 0.0);
        EXPECT_EQ(max_diff(dense_times_banded_transpose(r, op, Exec{w}), b1), 0.0);
    }
}

TEST(Kernels, ScaledUpdate)
{
    const DenseMatrix base = random_matrix(4, 4, 11);
    const DenseMatrix coef = random_matrix(4, 4, 12);
    const DenseMatrix term = random_matrix(4, 4, 13);
    const DenseMatrix src  = random_matrix(4, 4, 14);
    DenseMatrix       out(4, 4);
    scaled_update(out, base, 0.5, coef, term, src);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            EXPECT_DOUBLE_EQ(out(i, j), base(i, j) - 0.5 * (coef(i, j) * term(i, j) - src(i, j)));
        }
    }
    scaled_update(out, base, 0.5, coef, term);
    EXPECT_DOUBLE_EQ(out(1, 2), base(1, 2) - 0.5 * coef(1, 2) * term(1, 2));
    EXPECT_THROW(scaled_update(out, base, 0.5, coef, DenseMatrix(3, 4)), ShapeMismatch);
}

TEST(Kernels, FiniteChecks)
{
    DenseMatrix m(3, 3, 1.0);
    EXPECT_TRUE(all_finite(m));
    EXPECT_EQ(max_abs(m), 1.0);
    m(2, 1) = -5.0;
    EXPECT_EQ(max_abs(m), 5.0);
    m(1, 1) = std::nan("");
    EXPECT_FALSE(all_finite(m));
}
