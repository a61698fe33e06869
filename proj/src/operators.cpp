#include "adiwave/operators.hpp"

#include "adiwave/error.hpp"

#include <algorithm>
#include <span>
#include <string>
#include <vector>

namespace adiwave {

namespace {

template <std::size_t K>
std::vector<double> to_doubles(const std::array<Rational, K>& r, double scale = 1.0)
{
    std::vector<double> v(K);
    for (std::size_t i = 0; i < K; ++i) {
        v[i] = r[i].value() * scale;
    }
    return v;
}

std::vector<double> reversed(std::vector<double> v, double sign)
{
    std::reverse(v.begin(), v.end());
    for (double& x : v) {
        x *= sign;
    }
    return v;
}

void require_cells(std::size_t n)
{
    if (n < kMinCells) {
        throw TooSmallGrid("grid needs at least " + std::to_string(kMinCells) + " cells, got " + std::to_string(n));
    }
}

// Pair a top boundary row with its mirrored bottom row.
std::vector<BoundaryRow> mirrored_rows(std::size_t rows, std::size_t cols, std::size_t top_row,
                                       std::vector<double> top, double sign)
{
    const std::size_t width  = top.size();
    auto              bottom = reversed(top, sign);
    return {
        BoundaryRow{top_row, 0, std::move(top)},
        BoundaryRow{rows - 1 - top_row, cols - width, std::move(bottom)},
    };
}

TridiagonalFactorization factor(const BandedOperator& t)
{
    const std::size_t   n = t.rows();
    std::vector<double> lo(n - 1), mid(n), up(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        mid[i] = t.at(i, i);
        if (i + 1 < n) {
            lo[i] = t.at(i + 1, i);
            up[i] = t.at(i, i + 1);
        }
    }
    return lu_factor_tridiagonal(lo, mid, up);
}

} // namespace

CfdOperatorSet build_cfd_operators(std::size_t n, double h)
{
    require_cells(n);
    namespace c = coefficients;
    const double inv_h = 1.0 / h;

    CfdOperatorSet ops;
    ops.n = n;
    ops.h = h;

    const std::size_t nodes    = n + 1;
    const std::size_t interior = n - 1;

    ops.p = BandedOperator::toeplitz(nodes, nodes, 1, to_doubles(c::p_interior),
                                     mirrored_rows(nodes, nodes, 0, to_doubles(c::p_boundary), 1.0));
    ops.q = BandedOperator::toeplitz(nodes, nodes, 1, to_doubles(c::q_interior, inv_h),
                                     mirrored_rows(nodes, nodes, 0, to_doubles(c::q_boundary, inv_h), -1.0));

    ops.p_bar = BandedOperator::toeplitz(interior, interior, 1, to_doubles(c::p_interior),
                                         mirrored_rows(interior, interior, 0, to_doubles(c::p_bar_boundary), 1.0));
    // Reduced row r is node r+1; its band starts at node r.
    ops.q_bar = BandedOperator::toeplitz(interior, nodes, 0, to_doubles(c::q_interior, inv_h),
                                         mirrored_rows(interior, nodes, 0, to_doubles(c::q_bar_boundary, inv_h), -1.0));

    ops.p_lu     = factor(ops.p);
    ops.p_bar_lu = factor(ops.p_bar);
    return ops;
}

MimeticOperatorSet build_mimetic_operators(std::size_t n, double h)
{
    require_cells(n);
    namespace c = coefficients;
    const double inv_h = 1.0 / h;

    MimeticOperatorSet ops;
    ops.n = n;
    ops.h = h;

    // D: row r (center r+1/2) reads nodes r-1 .. r+2 in the interior.
    ops.d4 = BandedOperator::toeplitz(n, n + 1, 1, to_doubles(c::staggered_interior, inv_h),
                                      mirrored_rows(n, n + 1, 0, to_doubles(c::d4_boundary, inv_h), -1.0));

    // G: row r (node r) reads cell-centered entries r-1 .. r+2 (index 0 is
    // the left edge, index j the center j-1/2).
    auto g_rows = mirrored_rows(n + 1, n + 2, 0, to_doubles(c::g4_boundary, inv_h), -1.0);
    auto g_near = mirrored_rows(n + 1, n + 2, 1, to_doubles(c::g4_near_boundary, inv_h), -1.0);
    g_rows.insert(g_rows.end(), g_near.begin(), g_near.end());
    ops.g4 = BandedOperator::toeplitz(n + 1, n + 2, 1, to_doubles(c::staggered_interior, inv_h), std::move(g_rows));
    return ops;
}

void cfd_dx(const CfdOperatorSet& ops, ConstMatrixView m, MatrixView out, Reduction reduction, Exec exec)
{
    const bool full = reduction == Reduction::full;
    apply_right_transpose(m, full ? ops.q : ops.q_bar, out, exec);
    solve_batched_in_place(full ? ops.p_lu : ops.p_bar_lu, out, Orientation::rows, exec);
}

void cfd_dy(const CfdOperatorSet& ops, ConstMatrixView m, MatrixView out, Reduction reduction, Exec exec)
{
    const bool full = reduction == Reduction::full;
    apply_left(full ? ops.q : ops.q_bar, m, out, exec);
    solve_batched_in_place(full ? ops.p_lu : ops.p_bar_lu, out, Orientation::columns, exec);
}

DenseMatrix cfd_differentiate_rows(const CfdOperatorSet& ops, ConstMatrixView m, Reduction reduction, Exec exec)
{
    if (m.cols() != ops.n + 1) {
        throw ShapeMismatch("row differentiation needs N+1 columns");
    }
    DenseMatrix out(m.rows(), reduction == Reduction::full ? ops.n + 1 : ops.n - 1);
    cfd_dx(ops, m, out.view(), reduction, exec);
    return out;
}

DenseMatrix cfd_differentiate_cols(const CfdOperatorSet& ops, ConstMatrixView m, Reduction reduction, Exec exec)
{
    if (m.rows() != ops.n + 1) {
        throw ShapeMismatch("column differentiation needs N+1 rows");
    }
    DenseMatrix out(reduction == Reduction::full ? ops.n + 1 : ops.n - 1, m.cols());
    cfd_dy(ops, m, out.view(), reduction, exec);
    return out;
}

} // namespace adiwave
