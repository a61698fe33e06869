#pragma once

#include "adiwave/linalg.hpp"

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace adiwave {

enum class Scheme
{
    nodal,     // compact finite differences, all fields on nodes
    staggered, // mimetic operators, pressure on centers + edges
};

std::string_view to_string(Scheme s);

/// Uniform grid on the unit square, N cells per side.
struct GridSpec
{
    std::size_t n = 0;
    double      h = 0.0;

    explicit GridSpec(std::size_t cells);

    /// x_i = i h, i = 0..N.
    [[nodiscard]] std::vector<double> nodes() const;
    /// (0, x_{1/2}, ..., x_{N-1/2}, 1).
    [[nodiscard]] std::vector<double> centers_with_boundaries() const;
};

/// Pressure U and velocities V (x-component), W (y-component) at one time
/// level. Rows index y, columns index x.
///
///   nodal:      U, V, W are (N+1) x (N+1)
///   staggered:  U (N+2) x (N+2) on Xcb x Ycb
///               V (N+2) x (N+1) on Xn  x Ycb
///               W (N+1) x (N+2) on Xcb x Yn
struct WaveState
{
    Scheme      scheme = Scheme::nodal;
    std::size_t n      = 0;
    DenseMatrix u;
    DenseMatrix v;
    DenseMatrix w;
    double      time = 0.0;
};

/// Shape bookkeeping shared by both schemes. `m` is the number of unknown
/// pressure rows/columns (N-1 nodal, N staggered); pressure is (m+2)^2,
/// V is (m+2) x (N+1), W is (N+1) x (m+2).
struct Layout
{
    Scheme      scheme;
    std::size_t n;
    std::size_t m;

    Layout(Scheme s, std::size_t cells);

    [[nodiscard]] std::size_t pressure_size() const { return m + 2; }
    [[nodiscard]] std::size_t velocity_size() const { return n + 1; }

    /// Physical coordinates of pressure rows/columns (length m+2).
    [[nodiscard]] std::vector<double> pressure_coords() const;
    /// Physical coordinates along the velocity's differentiated axis (length N+1).
    [[nodiscard]] std::vector<double> velocity_coords() const;
};

/// Throws TooSmallGrid for N < 8.
WaveState allocate_state(Scheme scheme, std::size_t n);

/// Pre-sampled material coefficients: K = kappa at unknown pressures
/// (m x m), rv = 1/rho on reduced V (m x (N+1)), rw = 1/rho on reduced W
/// ((N+1) x m).
struct MaterialField
{
    DenseMatrix k;
    DenseMatrix rv;
    DenseMatrix rw;

    /// Largest wave speed sqrt(kappa / rho) bound over the grid.
    [[nodiscard]] double max_wave_speed() const;
};

MaterialField uniform_material(Scheme scheme, std::size_t n, double kappa, double rho);

/// Interior (first/last row and column removed); writes through.
MatrixView      interior_view(MatrixView m);
ConstMatrixView interior_view(ConstMatrixView m);
/// First and last rows removed.
MatrixView      reduced_rows(MatrixView m);
ConstMatrixView reduced_rows(ConstMatrixView m);
/// First and last columns removed.
MatrixView      reduced_cols(MatrixView m);
ConstMatrixView reduced_cols(ConstMatrixView m);

/// Text dump of U: three '#' header lines (scheme, N, time) then one CSV row
/// per grid row, values printed with 17 significant digits.
void write_snapshot_csv(std::ostream& os, const WaveState& state);

} // namespace adiwave
