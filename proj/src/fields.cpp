#include "adiwave/fields.hpp"

#include "adiwave/error.hpp"
#include "adiwave/operators.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

namespace adiwave {

std::string_view to_string(Scheme s)
{
    return s == Scheme::nodal ? "cfd" : "mfd";
}

GridSpec::GridSpec(std::size_t cells)
    : n(cells), h(1.0 / static_cast<double>(cells))
{
    if (cells == 0) {
        throw TooSmallGrid("grid needs at least one cell");
    }
}

std::vector<double> GridSpec::nodes() const
{
    std::vector<double> x(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        x[i] = static_cast<double>(i) * h;
    }
    return x;
}

std::vector<double> GridSpec::centers_with_boundaries() const
{
    std::vector<double> x(n + 2);
    x.front() = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x[i + 1] = (static_cast<double>(i) + 0.5) * h;
    }
    x.back() = 1.0;
    return x;
}

Layout::Layout(Scheme s, std::size_t cells)
    : scheme(s), n(cells), m(s == Scheme::nodal ? cells - 1 : cells)
{
    if (cells < kMinCells) {
        throw TooSmallGrid("grid needs at least " + std::to_string(kMinCells) + " cells, got " +
                           std::to_string(cells));
    }
}

std::vector<double> Layout::pressure_coords() const
{
    GridSpec g(n);
    return scheme == Scheme::nodal ? g.nodes() : g.centers_with_boundaries();
}

std::vector<double> Layout::velocity_coords() const
{
    return GridSpec(n).nodes();
}

WaveState allocate_state(Scheme scheme, std::size_t n)
{
    const Layout L(scheme, n);
    const auto   p  = L.pressure_size();
    const auto   nv = L.velocity_size();
    return WaveState{scheme, n, DenseMatrix(p, p), DenseMatrix(p, nv), DenseMatrix(nv, p), 0.0};
}

double MaterialField::max_wave_speed() const
{
    const double kmax = max_abs(k);
    const double rmax = std::max(max_abs(rv), max_abs(rw));
    return std::sqrt(kmax * rmax);
}

MaterialField uniform_material(Scheme scheme, std::size_t n, double kappa, double rho)
{
    if (!(kappa > 0.0) || !(rho > 0.0) || !std::isfinite(kappa) || !std::isfinite(rho)) {
        throw ConfigError("material constants must be positive and finite");
    }
    const Layout L(scheme, n);
    return MaterialField{DenseMatrix(L.m, L.m, kappa), DenseMatrix(L.m, L.velocity_size(), 1.0 / rho),
                         DenseMatrix(L.velocity_size(), L.m, 1.0 / rho)};
}

namespace {

template <typename View>
View trim(View m, std::size_t rows, std::size_t cols)
{
    if (m.rows() < 2 * rows + 1 || m.cols() < 2 * cols + 1) {
        throw TooSmall("matrix " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                       " too small to trim");
    }
    return m.block(rows, cols, m.rows() - 2 * rows, m.cols() - 2 * cols);
}

} // namespace

MatrixView interior_view(MatrixView m)
{
    return trim(m, 1, 1);
}
ConstMatrixView interior_view(ConstMatrixView m)
{
    return trim(m, 1, 1);
}
MatrixView reduced_rows(MatrixView m)
{
    return trim(m, 1, 0);
}
ConstMatrixView reduced_rows(ConstMatrixView m)
{
    return trim(m, 1, 0);
}
MatrixView reduced_cols(MatrixView m)
{
    return trim(m, 0, 1);
}
ConstMatrixView reduced_cols(ConstMatrixView m)
{
    return trim(m, 0, 1);
}

void write_snapshot_csv(std::ostream& os, const WaveState& state)
{
    os << "# scheme=" << to_string(state.scheme) << '\n'
       << "# N=" << state.n << '\n'
       << "# time=" << std::setprecision(17) << state.time << '\n';
    const auto& u = state.u;
    for (std::size_t i = 0; i < u.rows(); ++i) {
        for (std::size_t j = 0; j < u.cols(); ++j) {
            if (j) {
                os << ',';
            }
            os << std::setprecision(17) << u(i, j);
        }
        os << '\n';
    }
}

} // namespace adiwave
