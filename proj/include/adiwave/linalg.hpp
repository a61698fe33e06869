#pragma once

#include "adiwave/exec.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace adiwave {

class DenseMatrix;

/// Non-owning, possibly strided, mutable window into row-major storage.
class MatrixView
{
  public:
    MatrixView() = default;
    MatrixView(double* data, std::size_t rows, std::size_t cols, std::size_t stride)
        : data_(data), rows_(rows), cols_(cols), stride_(stride)
    {
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] std::size_t stride() const { return stride_; }
    [[nodiscard]] double* data() const { return data_; }

    double& operator()(std::size_t i, std::size_t j) const { return data_[i * stride_ + j]; }
    [[nodiscard]] std::span<double> row(std::size_t i) const { return {data_ + i * stride_, cols_}; }

    /// Sub-window [r0, r0+nr) x [c0, c0+nc); throws ShapeMismatch when out of range.
    [[nodiscard]] MatrixView block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    void fill(double value) const;
    /// Element-wise copy; shapes must match.
    void assign(const class ConstMatrixView& src) const;

  private:
    double*     data_   = nullptr;
    std::size_t rows_   = 0;
    std::size_t cols_   = 0;
    std::size_t stride_ = 0;
};

/// Read-only counterpart of MatrixView.
class ConstMatrixView
{
  public:
    ConstMatrixView() = default;
    ConstMatrixView(const double* data, std::size_t rows, std::size_t cols, std::size_t stride)
        : data_(data), rows_(rows), cols_(cols), stride_(stride)
    {
    }
    ConstMatrixView(const MatrixView& v) // NOLINT(google-explicit-constructor)
        : data_(v.data()), rows_(v.rows()), cols_(v.cols()), stride_(v.stride())
    {
    }
    ConstMatrixView(const DenseMatrix& m); // NOLINT(google-explicit-constructor)

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] std::size_t stride() const { return stride_; }
    [[nodiscard]] const double* data() const { return data_; }

    const double& operator()(std::size_t i, std::size_t j) const { return data_[i * stride_ + j]; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const { return {data_ + i * stride_, cols_}; }

    [[nodiscard]] ConstMatrixView block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  private:
    const double* data_   = nullptr;
    std::size_t   rows_   = 0;
    std::size_t   cols_   = 0;
    std::size_t   stride_ = 0;
};

/// Owning row-major matrix of doubles (rows >= 1, cols >= 1).
class DenseMatrix
{
  public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double value = 0.0);
    explicit DenseMatrix(ConstMatrixView src);

    static DenseMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool        empty() const { return data_.empty(); }

    double&       operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const double& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<double>       values() { return data_; }
    [[nodiscard]] std::span<const double> values() const { return data_; }

    [[nodiscard]] MatrixView      view() { return {data_.data(), rows_, cols_, cols_}; }
    [[nodiscard]] ConstMatrixView view() const { return {data_.data(), rows_, cols_, cols_}; }

    operator MatrixView() { return view(); } // NOLINT(google-explicit-constructor)

    [[nodiscard]] MatrixView block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc)
    {
        return view().block(r0, c0, nr, nc);
    }
    [[nodiscard]] ConstMatrixView block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        return view().block(r0, c0, nr, nc);
    }

    [[nodiscard]] DenseMatrix transposed() const;

  private:
    std::size_t         rows_ = 0;
    std::size_t         cols_ = 0;
    std::vector<double> data_;
};

/// Contiguous run of coefficients A(row, first_col + i) that replaces the
/// band for one row.
struct BoundaryRow
{
    std::size_t         row;
    std::size_t         first_col;
    std::vector<double> coeffs;
};

/// Banded operator with dense-ish boundary rows.
///
/// Band row r holds A(r, r + d - lower_bw) for d in [0, lower_bw + upper_bw].
/// Rows listed in the overrides ignore the band entirely. Every row is
/// represented exactly once and every coefficient is finite.
class BandedOperator
{
  public:
    BandedOperator() = default;

    /// General form: `band` is rows x (lower_bw + upper_bw + 1), diagonal ordered.
    BandedOperator(std::size_t rows, std::size_t cols, std::size_t lower_bw, std::size_t upper_bw,
                   std::vector<double> band, std::vector<BoundaryRow> overrides);

    /// Same interior stencil on every non-overridden row.
    static BandedOperator toeplitz(std::size_t rows, std::size_t cols, std::size_t lower_bw,
                                   std::span<const double> stencil, std::vector<BoundaryRow> overrides);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] std::size_t lower_bw() const { return lower_bw_; }
    [[nodiscard]] std::size_t upper_bw() const { return upper_bw_; }
    [[nodiscard]] const std::vector<BoundaryRow>& overrides() const { return overrides_; }

    /// First column touched by `row` and its coefficients (never empty).
    [[nodiscard]] std::size_t             first_col(std::size_t row) const { return first_[row]; }
    [[nodiscard]] std::span<const double> row_coeffs(std::size_t row) const
    {
        return {coeffs_.data() + offset_[row], offset_[row + 1] - offset_[row]};
    }

    [[nodiscard]] double      at(std::size_t i, std::size_t j) const;
    [[nodiscard]] DenseMatrix to_dense() const;

  private:
    void build_rows(const std::vector<double>& band);

    std::size_t              rows_     = 0;
    std::size_t              cols_     = 0;
    std::size_t              lower_bw_ = 0;
    std::size_t              upper_bw_ = 0;
    std::vector<BoundaryRow> overrides_;

    // Compressed per-row layout used by the kernels.
    std::vector<std::size_t> first_;
    std::vector<std::size_t> offset_;
    std::vector<double>      coeffs_;
};

/// LU factors of a tridiagonal matrix without pivoting.
class TridiagonalFactorization
{
  public:
    TridiagonalFactorization() = default;

    [[nodiscard]] std::size_t size() const { return pivot_.size(); }
    [[nodiscard]] std::span<const double> lower() const { return lower_; }
    [[nodiscard]] std::span<const double> pivot() const { return pivot_; }
    [[nodiscard]] std::span<const double> upper() const { return upper_; }
    [[nodiscard]] std::span<const double> inv_pivot() const { return inv_pivot_; }

    /// In-place solve of T x = b for one contiguous vector.
    void solve(std::span<double> b) const;

    /// Dense L*U, for verification.
    [[nodiscard]] DenseMatrix reconstruct() const;

  private:
    friend TridiagonalFactorization lu_factor_tridiagonal(std::span<const double>, std::span<const double>,
                                                          std::span<const double>);

    std::vector<double> lower_;     // multipliers l_i, row i+1
    std::vector<double> pivot_;     // u_ii
    std::vector<double> upper_;     // u_{i,i+1}
    std::vector<double> inv_pivot_; // 1 / u_ii
};

enum class Orientation
{
    columns, // T X = RHS, one system per column
    rows,    // X T^T = RHS, one system per row
};

/// Thomas factorization. Throws ZeroPivot when |pivot| < 1e-14 * max|T_ij|.
TridiagonalFactorization lu_factor_tridiagonal(std::span<const double> diag_lower, std::span<const double> diag_main,
                                               std::span<const double> diag_upper);

void        solve_batched_in_place(const TridiagonalFactorization& fact, MatrixView rhs, Orientation orientation,
                                   Exec exec = {});
DenseMatrix solve_batched(const TridiagonalFactorization& fact, ConstMatrixView rhs, Orientation orientation,
                          Exec exec = {});

/// out = op * m
void        apply_left(const BandedOperator& op, ConstMatrixView m, MatrixView out, Exec exec = {});
DenseMatrix banded_times_dense(const BandedOperator& op, ConstMatrixView m, Exec exec = {});

/// out = m * op^T
void        apply_right_transpose(ConstMatrixView m, const BandedOperator& op, MatrixView out, Exec exec = {});
DenseMatrix dense_times_banded_transpose(ConstMatrixView m, const BandedOperator& op, Exec exec = {});

/// Row partial sums combined in row order, so the value is independent of
/// the worker count.
double frobenius_norm(ConstMatrixView m, Exec exec = {});
double frobenius_distance(ConstMatrixView a, ConstMatrixView b, Exec exec = {});

/// out = base - scale * (coeff .* term - source); `source` may be empty.
void scaled_update(MatrixView out, ConstMatrixView base, double scale, ConstMatrixView coeff, ConstMatrixView term,
                   ConstMatrixView source = {}, Exec exec = {});

void copy(ConstMatrixView src, MatrixView dst, Exec exec = {});

[[nodiscard]] bool   all_finite(ConstMatrixView m);
[[nodiscard]] double max_abs(ConstMatrixView m);

} // namespace adiwave
