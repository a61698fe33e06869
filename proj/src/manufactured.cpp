#include "adiwave/manufactured.hpp"

#include "adiwave/error.hpp"

#include <cmath>
#include <numbers>

namespace adiwave {

namespace {

double ipow(double x, int p)
{
    double r = 1.0;
    for (int i = 0; i < p; ++i) {
        r *= x;
    }
    return r;
}

// g(s) = s^k - (1-s)^k and derivatives.
double poly(int k, double s)
{
    return ipow(s, k) - ipow(1.0 - s, k);
}
double poly_d1(int k, double s)
{
    return k * (ipow(s, k - 1) + ipow(1.0 - s, k - 1));
}
double poly_d2(int k, double s)
{
    return k < 2 ? 0.0 : k * (k - 1) * (ipow(s, k - 2) - ipow(1.0 - s, k - 2));
}

} // namespace

void ManufacturedCase::validate() const
{
    if (k < 1) {
        throw ConfigError("exponent k must be >= 1");
    }
    if (!(lambda > 0.0) || !(period > 0.0) || !(kappa > 0.0) || !(rho > 0.0)) {
        throw ConfigError("lambda, period, kappa and rho must be positive");
    }
    if (!std::isfinite(gamma) || !std::isfinite(amplitude)) {
        throw ConfigError("gamma and amplitude must be finite");
    }
}

double ManufacturedCase::omega() const
{
    return 2.0 * std::numbers::pi / period;
}

double ManufacturedCase::wave_speed() const
{
    return std::sqrt(kappa / rho);
}

double ManufacturedCase::spatial(double x, double y) const
{
    const double a = 2.0 * std::numbers::pi / lambda;
    return gamma * (poly(k, x) + poly(k, y)) + amplitude * std::sin(a * x) * std::sin(a * y);
}

double ManufacturedCase::spatial_dx(double x, double y) const
{
    const double a = 2.0 * std::numbers::pi / lambda;
    return gamma * poly_d1(k, x) + amplitude * a * std::cos(a * x) * std::sin(a * y);
}

double ManufacturedCase::spatial_dy(double x, double y) const
{
    const double a = 2.0 * std::numbers::pi / lambda;
    return gamma * poly_d1(k, y) + amplitude * a * std::sin(a * x) * std::cos(a * y);
}

double ManufacturedCase::spatial_dxx(double x, double y) const
{
    const double a = 2.0 * std::numbers::pi / lambda;
    return gamma * poly_d2(k, x) - amplitude * a * a * std::sin(a * x) * std::sin(a * y);
}

double ManufacturedCase::spatial_dyy(double x, double y) const
{
    const double a = 2.0 * std::numbers::pi / lambda;
    return gamma * poly_d2(k, y) - amplitude * a * a * std::sin(a * x) * std::sin(a * y);
}

double ManufacturedCase::spatial_laplacian(double x, double y) const
{
    return spatial_dxx(x, y) + spatial_dyy(x, y);
}

double ManufacturedCase::u(double x, double y, double t) const
{
    return spatial(x, y) * std::cos(omega() * t);
}

double ManufacturedCase::v(double x, double y, double t) const
{
    const double w = omega();
    return -spatial_dx(x, y) / (rho * w) * std::sin(w * t);
}

double ManufacturedCase::w(double x, double y, double t) const
{
    const double w = omega();
    return -spatial_dy(x, y) / (rho * w) * std::sin(w * t);
}

double ManufacturedCase::f(double x, double y, double t) const
{
    const double w = omega();
    return -(w * spatial(x, y) + kappa / (rho * w) * spatial_laplacian(x, y)) * std::sin(w * t);
}

double eval_u(const ManufacturedCase& c, double x, double y, double t)
{
    return c.u(x, y, t);
}
double eval_v(const ManufacturedCase& c, double x, double y, double t)
{
    return c.v(x, y, t);
}
double eval_w(const ManufacturedCase& c, double x, double y, double t)
{
    return c.w(x, y, t);
}
double eval_f(const ManufacturedCase& c, double x, double y, double t)
{
    return c.f(x, y, t);
}

// ---------------------------------------------------------------------------

CaseSampler::CaseSampler(const ManufacturedCase& c, Scheme scheme, std::size_t n)
    : case_(c), layout_(scheme, n)
{
    case_.validate();
    const auto   pc = layout_.pressure_coords();
    const auto   vc = layout_.velocity_coords();
    const auto   p  = layout_.pressure_size();
    const auto   nv = layout_.velocity_size();
    const auto   m  = layout_.m;
    const double w  = case_.omega();
    const double vs = -1.0 / (case_.rho * w);
    const double fs = case_.kappa / (case_.rho * w);

    u_shape_ = DenseMatrix(p, p);
    v_shape_ = DenseMatrix(p, nv);
    w_shape_ = DenseMatrix(nv, p);
    f_shape_ = DenseMatrix(m, m);

    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            u_shape_(i, j) = case_.spatial(pc[j], pc[i]);
        }
        for (std::size_t j = 0; j < nv; ++j) {
            v_shape_(i, j) = vs * case_.spatial_dx(vc[j], pc[i]);
        }
    }
    for (std::size_t i = 0; i < nv; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            w_shape_(i, j) = vs * case_.spatial_dy(pc[j], vc[i]);
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double x = pc[j + 1];
            const double y = pc[i + 1];
            f_shape_(i, j) = -(w * case_.spatial(x, y) + fs * case_.spatial_laplacian(x, y));
        }
    }
}

WaveState CaseSampler::exact_state(double t) const
{
    const double w  = case_.omega();
    const double cs = std::cos(w * t);
    const double sn = std::sin(w * t);

    WaveState s = allocate_state(layout_.scheme, layout_.n);
    s.time      = t;
    auto scale  = [](const DenseMatrix& src, double a, DenseMatrix& dst) {
        auto in  = src.values();
        auto out = dst.values();
        for (std::size_t i = 0; i < in.size(); ++i) {
            out[i] = in[i] * a;
        }
    };
    scale(u_shape_, cs, s.u);
    scale(v_shape_, sn, s.v);
    scale(w_shape_, sn, s.w);
    return s;
}

void CaseSampler::fill_pressure_boundary(double t, MatrixView u) const
{
    const auto p = layout_.pressure_size();
    if (u.rows() != p || u.cols() != p) {
        throw ShapeMismatch("pressure boundary: wrong pressure shape");
    }
    const double cs = std::cos(case_.omega() * t);
    for (std::size_t j = 0; j < p; ++j) {
        u(0, j)     = u_shape_(0, j) * cs;
        u(p - 1, j) = u_shape_(p - 1, j) * cs;
    }
    for (std::size_t i = 1; i + 1 < p; ++i) {
        u(i, 0)     = u_shape_(i, 0) * cs;
        u(i, p - 1) = u_shape_(i, p - 1) * cs;
    }
}

void CaseSampler::fill_velocity_boundary(double t, MatrixView v, MatrixView w) const
{
    const auto p  = layout_.pressure_size();
    const auto nv = layout_.velocity_size();
    if (v.rows() != p || v.cols() != nv || w.rows() != nv || w.cols() != p) {
        throw ShapeMismatch("velocity boundary: wrong velocity shapes");
    }
    const double sn = std::sin(case_.omega() * t);
    for (std::size_t j = 0; j < nv; ++j) {
        v(0, j)     = v_shape_(0, j) * sn;
        v(p - 1, j) = v_shape_(p - 1, j) * sn;
    }
    for (std::size_t i = 0; i < nv; ++i) {
        w(i, 0)     = w_shape_(i, 0) * sn;
        w(i, p - 1) = w_shape_(i, p - 1) * sn;
    }
}

void CaseSampler::fill_intermediate_boundary(double t, double dt, MatrixView u, MatrixView v_bar,
                                             MatrixView w_bar) const
{
    const auto   p  = layout_.pressure_size();
    const auto   nv = layout_.velocity_size();
    const auto   m  = layout_.m;
    const auto   pc = layout_.pressure_coords();
    const auto   vc = layout_.velocity_coords();
    const double w  = case_.omega();
    const double q  = 0.25 * dt;
    const double c0 = std::cos(w * t), c1 = std::cos(w * (t + dt));
    const double s0 = std::sin(w * t), s1 = std::sin(w * (t + dt));
    const double rw = 1.0 / (case_.rho * w);

    if (u.rows() != 0) {
        if (u.rows() != p || u.cols() != p) {
            throw ShapeMismatch("intermediate boundary: wrong pressure shape");
        }
        // kappa w_y - f = -u_t - kappa v_x  =  w S sin(wt) + kappa/(rho w) S_xx sin(wt)
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j : {std::size_t{0}, p - 1}) {
                const double x = pc[j], y = pc[i];
                const double g = case_.spatial(x, y);
                const double a2 = w * g + case_.kappa * rw * case_.spatial_dxx(x, y);
                u(i, j) = 0.5 * g * (c0 + c1) + q * a2 * (s1 - s0);
            }
        }
        for (std::size_t j = 1; j + 1 < p; ++j) {
            for (std::size_t i : {std::size_t{0}, p - 1}) {
                u(i, j) = 0.5 * u_shape_(i, j) * (c0 + c1);
            }
        }
    }
    if (v_bar.rows() != 0) {
        if (v_bar.rows() != m || v_bar.cols() != nv) {
            throw ShapeMismatch("intermediate boundary: wrong reduced V shape");
        }
        for (std::size_t i = 0; i < m; ++i) {
            v_bar(i, 0)      = 0.5 * v_shape_(i + 1, 0) * (s0 + s1);
            v_bar(i, nv - 1) = 0.5 * v_shape_(i + 1, nv - 1) * (s0 + s1);
        }
    }
    if (w_bar.rows() != 0) {
        if (w_bar.rows() != nv || w_bar.cols() != m) {
            throw ShapeMismatch("intermediate boundary: wrong reduced W shape");
        }
        // A2 on W is u_y / rho.
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t i : {std::size_t{0}, nv - 1}) {
                const double sy = case_.spatial_dy(pc[j + 1], vc[i]);
                w_bar(i, j)     = 0.5 * w_shape_(i, j + 1) * (s0 + s1) + q * sy / case_.rho * (c1 - c0);
            }
        }
    }
}

void CaseSampler::fill_v_edges(double t, MatrixView v_bar) const
{
    const auto m  = layout_.m;
    const auto nv = layout_.velocity_size();
    if (v_bar.rows() != m || v_bar.cols() != nv) {
        throw ShapeMismatch("velocity edges: wrong reduced V shape");
    }
    const double sn = std::sin(case_.omega() * t);
    for (std::size_t i = 0; i < m; ++i) {
        v_bar(i, 0)      = v_shape_(i + 1, 0) * sn;
        v_bar(i, nv - 1) = v_shape_(i + 1, nv - 1) * sn;
    }
}

void CaseSampler::fill_w_edges(double t, MatrixView w_bar) const
{
    const auto m  = layout_.m;
    const auto nv = layout_.velocity_size();
    if (w_bar.rows() != nv || w_bar.cols() != m) {
        throw ShapeMismatch("velocity edges: wrong reduced W shape");
    }
    const double sn = std::sin(case_.omega() * t);
    for (std::size_t j = 0; j < m; ++j) {
        w_bar(0, j)      = w_shape_(0, j + 1) * sn;
        w_bar(nv - 1, j) = w_shape_(nv - 1, j + 1) * sn;
    }
}

void CaseSampler::source(double t, MatrixView out) const
{
    const auto m = layout_.m;
    if (out.rows() != m || out.cols() != m) {
        throw ShapeMismatch("source: wrong interior shape");
    }
    const double sn = std::sin(case_.omega() * t);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            out(i, j) = f_shape_(i, j) * sn;
        }
    }
}

WaveState sample_initial_state(const ManufacturedCase& c, const GridSpec& grid, Scheme scheme)
{
    return CaseSampler(c, scheme, grid.n).exact_state(0.0);
}

DenseMatrix sample_boundary_u(const ManufacturedCase& c, const GridSpec& grid, Scheme scheme, double t)
{
    const CaseSampler s(c, scheme, grid.n);
    const auto        p = s.layout().pressure_size();
    DenseMatrix       u(p, p);
    s.fill_pressure_boundary(t, u.view());
    return u;
}

} // namespace adiwave
