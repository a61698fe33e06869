#include "adiwave/linalg.hpp"

#include "adiwave/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace adiwave {

int hardware_workers()
{
#ifdef _OPENMP
    return omp_get_num_procs();
#else
    return 1;
#endif
}

namespace {

std::string shape_str(std::size_t r, std::size_t c)
{
    return std::to_string(r) + "x" + std::to_string(c);
}

void require_shape(ConstMatrixView m, std::size_t rows, std::size_t cols, const char* what)
{
    if (m.rows() != rows || m.cols() != cols) {
        throw ShapeMismatch(std::string(what) + ": expected " + shape_str(rows, cols) + ", got " +
                            shape_str(m.rows(), m.cols()));
    }
}

// Column block width for column-oriented sweeps over row-major data.
constexpr std::ptrdiff_t kColumnBlock = 64;

} // namespace

// ---------------------------------------------------------------------------
// Views

MatrixView MatrixView::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_) {
        throw ShapeMismatch("block out of range");
    }
    return {data_ + r0 * stride_ + c0, nr, nc, stride_};
}

void MatrixView::fill(double value) const
{
    for (std::size_t i = 0; i < rows_; ++i) {
        std::fill_n(data_ + i * stride_, cols_, value);
    }
}

void MatrixView::assign(const ConstMatrixView& src) const
{
    require_shape(src, rows_, cols_, "assign");
    for (std::size_t i = 0; i < rows_; ++i) {
        std::copy_n(src.data() + i * src.stride(), cols_, data_ + i * stride_);
    }
}

ConstMatrixView::ConstMatrixView(const DenseMatrix& m)
    : ConstMatrixView(m.view())
{
}

ConstMatrixView ConstMatrixView::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_) {
        throw ShapeMismatch("block out of range");
    }
    return {data_ + r0 * stride_ + c0, nr, nc, stride_};
}

// ---------------------------------------------------------------------------
// DenseMatrix

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double value)
    : rows_(rows), cols_(cols), data_(rows * cols, value)
{
    if (rows == 0 || cols == 0) {
        throw ShapeMismatch("DenseMatrix needs rows >= 1 and cols >= 1");
    }
}

DenseMatrix::DenseMatrix(ConstMatrixView src)
    : DenseMatrix(src.rows(), src.cols())
{
    view().assign(src);
}

DenseMatrix DenseMatrix::identity(std::size_t n)
{
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

DenseMatrix DenseMatrix::transposed() const
{
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// BandedOperator

BandedOperator::BandedOperator(std::size_t rows, std::size_t cols, std::size_t lower_bw, std::size_t upper_bw,
                               std::vector<double> band, std::vector<BoundaryRow> overrides)
    : rows_(rows), cols_(cols), lower_bw_(lower_bw), upper_bw_(upper_bw), overrides_(std::move(overrides))
{
    if (rows == 0 || cols == 0) {
        throw ShapeMismatch("BandedOperator needs rows >= 1 and cols >= 1");
    }
    if (band.size() != rows * (lower_bw + upper_bw + 1)) {
        throw ShapeMismatch("band storage must be rows x (lower_bw + upper_bw + 1)");
    }
    build_rows(band);
}

BandedOperator BandedOperator::toeplitz(std::size_t rows, std::size_t cols, std::size_t lower_bw,
                                        std::span<const double> stencil, std::vector<BoundaryRow> overrides)
{
    if (stencil.size() <= lower_bw) {
        throw ShapeMismatch("stencil shorter than lower bandwidth");
    }
    const std::size_t   width = stencil.size();
    std::vector<double> band(rows * width);
    for (std::size_t r = 0; r < rows; ++r) {
        std::copy(stencil.begin(), stencil.end(), band.begin() + static_cast<std::ptrdiff_t>(r * width));
    }
    // Rows covered by overrides carry no band data.
    for (const auto& o : overrides) {
        if (o.row < rows) {
            std::fill_n(band.begin() + static_cast<std::ptrdiff_t>(o.row * width), width, 0.0);
        }
    }
    return {rows, cols, lower_bw, width - 1 - lower_bw, std::move(band), std::move(overrides)};
}

void BandedOperator::build_rows(const std::vector<double>& band)
{
    std::vector<const BoundaryRow*> by_row(rows_, nullptr);
    for (const auto& o : overrides_) {
        if (o.row >= rows_) {
            throw ShapeMismatch("boundary row index " + std::to_string(o.row) + " outside [0, " +
                                std::to_string(rows_) + ")");
        }
        if (by_row[o.row] != nullptr) {
            throw ShapeMismatch("row " + std::to_string(o.row) + " overridden twice");
        }
        if (o.coeffs.empty() || o.first_col + o.coeffs.size() > cols_) {
            throw ShapeMismatch("boundary row " + std::to_string(o.row) + " does not fit in the column range");
        }
        by_row[o.row] = &o;
    }

    const std::size_t width = lower_bw_ + upper_bw_ + 1;
    first_.assign(rows_, 0);
    offset_.assign(rows_ + 1, 0);
    coeffs_.clear();

    for (std::size_t r = 0; r < rows_; ++r) {
        offset_[r] = coeffs_.size();
        if (const BoundaryRow* o = by_row[r]) {
            first_[r] = o->first_col;
            coeffs_.insert(coeffs_.end(), o->coeffs.begin(), o->coeffs.end());
            continue;
        }
        // Columns of the band that land outside [0, cols) must be zero.
        const auto lo = static_cast<std::ptrdiff_t>(r) - static_cast<std::ptrdiff_t>(lower_bw_);
        std::ptrdiff_t c_begin = std::max<std::ptrdiff_t>(lo, 0);
        std::ptrdiff_t c_end   = std::min<std::ptrdiff_t>(lo + static_cast<std::ptrdiff_t>(width),
                                                        static_cast<std::ptrdiff_t>(cols_));
        for (std::size_t d = 0; d < width; ++d) {
            const std::ptrdiff_t c = lo + static_cast<std::ptrdiff_t>(d);
            const double         v = band[r * width + d];
            if ((c < c_begin || c >= c_end) && v != 0.0) {
                throw ShapeMismatch("band row " + std::to_string(r) + " reaches outside the column range");
            }
        }
        if (c_end <= c_begin) {
            c_begin = c_end = 0;
        }
        first_[r] = static_cast<std::size_t>(c_begin);
        for (std::ptrdiff_t c = c_begin; c < c_end; ++c) {
            coeffs_.push_back(band[r * width + static_cast<std::size_t>(c - lo)]);
        }
    }
    offset_[rows_] = coeffs_.size();

    for (double v : coeffs_) {
        if (!std::isfinite(v)) {
            throw NonFinite("BandedOperator coefficient is not finite");
        }
    }
}

double BandedOperator::at(std::size_t i, std::size_t j) const
{
    const auto c = row_coeffs(i);
    const auto f = first_[i];
    return (j >= f && j < f + c.size()) ? c[j - f] : 0.0;
}

DenseMatrix BandedOperator::to_dense() const
{
    DenseMatrix d(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const auto c = row_coeffs(r);
        for (std::size_t t = 0; t < c.size(); ++t) {
            d(r, first_[r] + t) = c[t];
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Tridiagonal LU

TridiagonalFactorization lu_factor_tridiagonal(std::span<const double> diag_lower, std::span<const double> diag_main,
                                               std::span<const double> diag_upper)
{
    const std::size_t n = diag_main.size();
    if (n < 2 || diag_lower.size() != n - 1 || diag_upper.size() != n - 1) {
        throw ShapeMismatch("tridiagonal factorization needs n >= 2 and off-diagonals of length n-1");
    }

    double scale = 0.0;
    for (auto s : {diag_lower, diag_main, diag_upper}) {
        for (double v : s) {
            scale = std::max(scale, std::abs(v));
        }
    }
    const double tiny = 1e-14 * scale;

    TridiagonalFactorization f;
    f.lower_.resize(n - 1);
    f.pivot_.resize(n);
    f.upper_.assign(diag_upper.begin(), diag_upper.end());
    f.inv_pivot_.resize(n);

    f.pivot_[0] = diag_main[0];
    for (std::size_t i = 0;; ++i) {
        if (!(std::abs(f.pivot_[i]) >= tiny) || f.pivot_[i] == 0.0) {
            throw ZeroPivot("zero pivot at row " + std::to_string(i));
        }
        f.inv_pivot_[i] = 1.0 / f.pivot_[i];
        if (i + 1 == n) {
            break;
        }
        f.lower_[i]     = diag_lower[i] * f.inv_pivot_[i];
        f.pivot_[i + 1] = diag_main[i + 1] - f.lower_[i] * diag_upper[i];
    }
    return f;
}

void TridiagonalFactorization::solve(std::span<double> b) const
{
    const std::size_t n = pivot_.size();
    for (std::size_t i = 1; i < n; ++i) {
        b[i] -= lower_[i - 1] * b[i - 1];
    }
    b[n - 1] *= inv_pivot_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        b[i] = (b[i] - upper_[i] * b[i + 1]) * inv_pivot_[i];
    }
}

DenseMatrix TridiagonalFactorization::reconstruct() const
{
    const std::size_t n = pivot_.size();
    DenseMatrix       t(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        // (L U)_{i,i-1} = l_{i-1} u_{i-1,i-1};  (L U)_{i,i} = l_{i-1} u_{i-1,i} + u_ii
        t(i, i) = pivot_[i] + (i > 0 ? lower_[i - 1] * upper_[i - 1] : 0.0);
        if (i > 0) {
            t(i, i - 1) = lower_[i - 1] * pivot_[i - 1];
        }
        if (i + 1 < n) {
            t(i, i + 1) = upper_[i];
        }
    }
    return t;
}

void solve_batched_in_place(const TridiagonalFactorization& fact, MatrixView rhs, Orientation orientation, Exec exec)
{
    const std::size_t n = fact.size();
    const auto        l = fact.lower();
    const auto        u = fact.upper();
    const auto        p = fact.inv_pivot();

    if (orientation == Orientation::rows) {
        if (rhs.cols() != n) {
            throw ShapeMismatch("row-oriented solve needs rhs.cols == " + std::to_string(n));
        }
        const auto rows = static_cast<std::ptrdiff_t>(rhs.rows());
#pragma omp parallel for schedule(static) num_threads(exec.workers) if (exec.parallel())
        for (std::ptrdiff_t i = 0; i < rows; ++i) {
            fact.solve(rhs.row(static_cast<std::size_t>(i)));
        }
        return;
    }

    if (rhs.rows() != n) {
        throw ShapeMismatch("column-oriented solve needs rhs.rows == " + std::to_string(n));
    }
    const auto cols    = static_cast<std::ptrdiff_t>(rhs.cols());
    const auto nblocks = (cols + kColumnBlock - 1) / kColumnBlock;
    double*    base    = rhs.data();
    const auto stride  = rhs.stride();

#pragma omp parallel for schedule(static) num_threads(exec.workers) if (exec.parallel())
    for (std::ptrdiff_t blk = 0; blk < nblocks; ++blk) {
        const std::size_t c0 = static_cast<std::size_t>(blk * kColumnBlock);
        const std::size_t c1 = std::min<std::size_t>(c0 + kColumnBlock, static_cast<std::size_t>(cols));
        for (std::size_t i = 1; i < n; ++i) {
            double* const       ri = base + i * stride;
            const double* const rp = ri - stride;
            const double        li = l[i - 1];
            for (std::size_t c = c0; c < c1; ++c) {
                ri[c] -= li * rp[c];
            }
        }
        {
            double* const last = base + (n - 1) * stride;
            const double  inv  = p[n - 1];
            for (std::size_t c = c0; c < c1; ++c) {
                last[c] *= inv;
            }
        }
        for (std::size_t i = n - 1; i-- > 0;) {
            double* const       ri  = base + i * stride;
            const double* const rn  = ri + stride;
            const double        ui  = u[i];
            const double        inv = p[i];
            for (std::size_t c = c0; c < c1; ++c) {
                ri[c] = (ri[c] - ui * rn[c]) * inv;
            }
        }
    }
}

DenseMatrix solve_batched(const TridiagonalFactorization& fact, ConstMatrixView rhs, Orientation orientation,
                          Exec exec)
{
    DenseMatrix out(rhs);
    solve_batched_in_place(fact, out.view(), orientation, exec);
    return out;
}

// ---------------------------------------------------------------------------
// Banded products

void apply_left(const BandedOperator& op, ConstMatrixView m, MatrixView out, Exec exec)
{
    if (op.cols() != m.rows()) {
        throw ShapeMismatch("op * m: op.cols (" + std::to_string(op.cols()) + ") != m.rows (" +
                            std::to_string(m.rows()) + ")");
    }
    require_shape(out, op.rows(), m.cols(), "op * m output");

    const auto        rows = static_cast<std::ptrdiff_t>(op.rows());
    const std::size_t nc   = m.cols();
#pragma omp parallel for schedule(static) num_threads(exec.workers) if (exec.parallel())
    for (std::ptrdiff_t ri = 0; ri < rows; ++ri) {
        const auto    r      = static_cast<std::size_t>(ri);
        const auto    coeffs = op.row_coeffs(r);
        const auto    first  = op.first_col(r);
        double* const dst    = out.row(r).data();
        std::fill_n(dst, nc, 0.0);
        for (std::size_t t = 0; t < coeffs.size(); ++t) {
            const double        a   = coeffs[t];
            const double* const src = m.row(first + t).data();
            for (std::size_t c = 0; c < nc; ++c) {
                dst[c] += a * src[c];
            }
        }
    }
}

DenseMatrix banded_times_dense(const BandedOperator& op, ConstMatrixView m, Exec exec)
{
    if (op.cols() != m.rows()) {
        throw ShapeMismatch("banded_times_dense: op.cols != m.rows");
    }
    DenseMatrix out(op.rows(), m.cols());
    apply_left(op, m, out.view(), exec);
    return out;
}

void apply_right_transpose(ConstMatrixView m, const BandedOperator& op, MatrixView out, Exec exec)
{
    if (m.cols() != op.cols()) {
        throw ShapeMismatch("m * op^T: m.cols (" + std::to_string(m.cols()) + ") != op.cols (" +
                            std::to_string(op.cols()) + ")");
    }
    require_shape(out, m.rows(), op.rows(), "m * op^T output");

    const auto        rows  = static_cast<std::ptrdiff_t>(m.rows());
    const std::size_t nrows = op.rows();
#pragma omp parallel for schedule(static) num_threads(exec.workers) if (exec.parallel())
    for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
        const auto          i   = static_cast<std::size_t>(ii);
        const double* const src = m.row(i).data();
        double* const       dst = out.row(i).data();
        for (std::size_t r = 0; r < nrows; ++r) {
            const auto          coeffs = op.row_coeffs(r);
            const double* const s      = src + op.first_col(r);
            double              acc    = 0.0;
            for (std::size_t t = 0; t < coeffs.size(); ++t) {
                acc += coeffs[t] * s[t];
            }
            dst[r] = acc;
        }
    }
}

DenseMatrix dense_times_banded_transpose(ConstMatrixView m, const BandedOperator& op, Exec exec)
{
    if (m.cols() != op.cols()) {
        throw ShapeMismatch("dense_times_banded_transpose: m.cols != op.cols");
    }
    DenseMatrix out(m.rows(), op.rows());
    apply_right_transpose(m, op, out.view(), exec);
    return out;
}

// ---------------------------------------------------------------------------
// Reductions and element-wise updates

namespace {

template <typename RowSum>
double ordered_row_reduction(std::size_t rows, Exec exec, RowSum&& row_sum)
{
    std::vector<double> partial(rows);
    const auto          n = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static) num_threads(exec.workers) if (exec.parallel())
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        partial[static_cast<std::size_t>(i)] = row_sum(static_cast<std::size_t>(i));
    }
    double total = 0.0;
    for (double v : partial) {
        total += v;
    }
    return total;
}

} // namespace

double frobenius_norm(ConstMatrixView m, Exec exec)
{
    const double sum = ordered_row_reduction(m.rows(), exec, [&](std::size_t i) {
        double s = 0.0;
        for (double v : m.row(i)) {
            s += v * v;
        }
        return s;
    });
    return std::sqrt(sum);
}

double frobenius_distance(ConstMatrixView a, ConstMatrixView b, Exec exec)
{
    require_shape(b, a.rows(), a.cols(), "frobenius_distance");
    const double sum = ordered_row_reduction(a.rows(), exec, [&](std::size_t i) {
        const auto ra = a.row(i);
        const auto rb = b.row(i);
        double     s  = 0.0;
        for (std::size_t j = 0; j < ra.size(); ++j) {
            const double d = ra[j] - rb[j];
            s += d * d;
        }
        return s;
    });
    return std::sqrt(sum);
}

void scaled_update(MatrixView out, ConstMatrixView base, double scale, ConstMatrixView coeff, ConstMatrixView term,
                   ConstMatrixView source, Exec exec)
{
    const std::size_t nr = out.rows();
    const std::size_t nc = out.cols();
    require_shape(base, nr, nc, "scaled_update base");
    require_shape(coeff, nr, nc, "scaled_update coeff");
    require_shape(term, nr, nc, "scaled_update term");
    const bool has_source = source.data() != nullptr;
    if (has_source) {
        require_shape(source, nr, nc, "scaled_update source");
    }

    const auto rows = static_cast<std::ptrdiff_t>(nr);
#pragma omp parallel for schedule(static) num_threads(exec.workers) if (exec.parallel())
    for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        double* const       o = out.row(i).data();
        const double* const b = base.row(i).data();
        const double* const k = coeff.row(i).data();
        const double* const t = term.row(i).data();
        if (has_source) {
            const double* const f = source.row(i).data();
            for (std::size_t j = 0; j < nc; ++j) {
                o[j] = b[j] - scale * (k[j] * t[j] - f[j]);
            }
        } else {
            for (std::size_t j = 0; j < nc; ++j) {
                o[j] = b[j] - scale * (k[j] * t[j]);
            }
        }
    }
}

void copy(ConstMatrixView src, MatrixView dst, Exec exec)
{
    require_shape(src, dst.rows(), dst.cols(), "copy");
    const auto rows = static_cast<std::ptrdiff_t>(src.rows());
#pragma omp parallel for schedule(static) num_threads(exec.workers) if (exec.parallel())
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        const auto r = src.row(static_cast<std::size_t>(i));
        std::copy(r.begin(), r.end(), dst.row(static_cast<std::size_t>(i)).begin());
    }
}

bool all_finite(ConstMatrixView m)
{
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (double v : m.row(i)) {
            if (!std::isfinite(v)) {
                return false;
            }
        }
    }
    return true;
}

double max_abs(ConstMatrixView m)
{
    double r = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (double v : m.row(i)) {
            r = std::max(r, std::abs(v));
        }
    }
    return r;
}

} // namespace adiwave
