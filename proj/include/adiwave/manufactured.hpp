#pragma once

#include "adiwave/fields.hpp"
#include "adiwave/linalg.hpp"

#include <cstddef>

namespace adiwave {

/// Time-harmonic exact solution of the velocity-pressure system
///
///   u = [G (x^k - (1-x)^k + y^k - (1-y)^k) + A sin(2 pi x / L) sin(2 pi y / L)] cos(2 pi t / T)
///
/// with velocities from rho dv/dt = -grad u (zero at t = 0) and the forcing
/// f = du/dt + kappa div(v, w) that makes the triple exact.
struct ManufacturedCase
{
    double gamma  = 0.0;
    int    k      = 1;
    double lambda = 0.25;
    double period = 0.70710678118654752440; // 1/sqrt(2)
    double kappa  = 1.0;
    double rho    = 1.0;
    // A above; 1 for every case in the study, 0 with gamma = 0 gives the
    // trivial solution.
    double amplitude = 1.0;

    /// Throws ConfigError unless k >= 1, lambda, period, kappa, rho > 0 and
    /// gamma, amplitude are finite.
    void validate() const;

    [[nodiscard]] double omega() const;
    [[nodiscard]] double wave_speed() const;

    // Spatial factor S and its derivatives.
    [[nodiscard]] double spatial(double x, double y) const;
    [[nodiscard]] double spatial_dx(double x, double y) const;
    [[nodiscard]] double spatial_dy(double x, double y) const;
    [[nodiscard]] double spatial_dxx(double x, double y) const;
    [[nodiscard]] double spatial_dyy(double x, double y) const;
    [[nodiscard]] double spatial_laplacian(double x, double y) const;

    [[nodiscard]] double u(double x, double y, double t) const;
    [[nodiscard]] double v(double x, double y, double t) const;
    [[nodiscard]] double w(double x, double y, double t) const;
    [[nodiscard]] double f(double x, double y, double t) const;
};

double eval_u(const ManufacturedCase& c, double x, double y, double t);
double eval_v(const ManufacturedCase& c, double x, double y, double t);
double eval_w(const ManufacturedCase& c, double x, double y, double t);
double eval_f(const ManufacturedCase& c, double x, double y, double t);

/// The case pre-sampled on one scheme's grid locations. Every field is a
/// fixed spatial pattern times cos(wt) or sin(wt), so sampling at a new time
/// level costs one multiply per entry.
class CaseSampler
{
  public:
    CaseSampler(const ManufacturedCase& c, Scheme scheme, std::size_t n);

    [[nodiscard]] const ManufacturedCase& manufactured() const { return case_; }
    [[nodiscard]] const Layout&           layout() const { return layout_; }

    [[nodiscard]] WaveState exact_state(double t) const;

    /// Overwrites the outermost rows and columns of a full pressure matrix.
    void fill_pressure_boundary(double t, MatrixView u) const;
    /// Overwrites the first/last row of V and first/last column of W.
    void fill_velocity_boundary(double t, MatrixView v, MatrixView w) const;
    /// Boundary values of the intermediate Peaceman-Rachford level between
    /// t and t + dt, from eliminating that level between the two stages:
    ///   U* = (U^m + U^m+1)/2 + dt/4 A2 (U^m+1 - U^m) - dt/4 (F^m+1 - F^m)
    /// with A2 the y-direction operator. Writes the outermost columns of the
    /// pressure, the first/last column of a reduced V and the first/last row
    /// of a reduced W (empty views are skipped).
    void fill_intermediate_boundary(double t, double dt, MatrixView u, MatrixView v_bar, MatrixView w_bar) const;

    /// Overwrites the first/last column of a reduced V (rows of V without the
    /// y-boundary rows): the velocity at x = 0 and x = 1.
    void fill_v_edges(double t, MatrixView v_bar) const;
    /// Overwrites the first/last row of a reduced W: the velocity at y = 0, 1.
    void fill_w_edges(double t, MatrixView w_bar) const;
    /// Source at the unknown pressure locations (m x m).
    void source(double t, MatrixView out) const;

  private:
    ManufacturedCase case_;
    Layout           layout_;
    DenseMatrix      u_shape_;
    DenseMatrix      v_shape_;
    DenseMatrix      w_shape_;
    DenseMatrix      f_shape_;
};

WaveState sample_initial_state(const ManufacturedCase& c, const GridSpec& grid, Scheme scheme);

/// Full pressure-shaped matrix holding u(t) on the boundary entries and zero
/// inside.
DenseMatrix sample_boundary_u(const ManufacturedCase& c, const GridSpec& grid, Scheme scheme, double t);

} // namespace adiwave
