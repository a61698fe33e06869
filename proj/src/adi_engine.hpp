#pragma once

// Peaceman-Rachford step shared by both spatial schemes. A scheme supplies
// four derivative kernels with the shapes (m unknown pressure lines, N cells):
//
//   velocity_dx : reduced V  m x (N+1)       -> m x m
//   pressure_dx : U rows     m x (m+2)       -> m x (N+1)
//   velocity_dy : reduced W  (N+1) x m       -> m x m
//   pressure_dy : U columns  (m+2) x m       -> (N+1) x m
//
// Each kernel treats rows (x derivatives) or columns (y derivatives)
// independently, which is where the parallelism lives.
//
// A scheme with `fixed_velocity_edges` set keeps the velocity at the
// boundary nodes (x = 0, 1 for V, y = 0, 1 for W) as data: the fixed-point
// iterations hold the values found in the initial iterate and the step
// writes the manufactured values.

#include "adiwave/adi.hpp"
#include "adiwave/error.hpp"
#include "adiwave/exec.hpp"
#include "adiwave/fields.hpp"
#include "adiwave/linalg.hpp"
#include "adiwave/manufactured.hpp"

#include <string>

namespace adiwave::detail {

inline void require(bool ok, const char* what)
{
    if (!ok) {
        throw ShapeMismatch(what);
    }
}

inline void check_finite(ConstMatrixView m, double limit, const char* where)
{
    if (!all_finite(m)) {
        throw NonFinite(std::string(where) + ": non-finite values");
    }
    if (max_abs(m) > limit) {
        throw NonFinite(std::string(where) + ": magnitude above divergence limit");
    }
}

inline double stopping_tolerance(const AdiConfig& cfg, ConstMatrixView u, Exec exec)
{
    return cfg.tolerance == ToleranceMode::relative ? cfg.eps * frobenius_norm(u, exec) : cfg.eps;
}

/// Fixed-point loop shared by both directions. `update_pressure` writes the
/// next pressure iterate from the current velocity, `update_velocity` the
/// next velocity iterate from whatever pressure is currently stored.
template <typename UpdatePressure, typename UpdateVelocity>
StageResult fixed_point(MatrixView pressure, MatrixView velocity, DenseMatrix& pressure_next,
                        DenseMatrix& velocity_next, const AdiConfig& cfg, Exec exec,
                        UpdatePressure&& update_pressure, UpdateVelocity&& update_velocity)
{
    StageResult result;
    for (int k = 1;; ++k) {
        const bool check = k >= cfg.min_iters_before_check || cfg.record_history;

        update_pressure(pressure_next.view());
        if (cfg.coupling == Coupling::jacobi) {
            update_velocity(velocity_next.view());
        }
        const double du = check ? frobenius_distance(pressure_next, pressure, exec) : 0.0;
        copy(pressure_next, pressure, exec);
        if (cfg.coupling == Coupling::seidel) {
            update_velocity(velocity_next.view());
        }
        const double dv = check ? frobenius_distance(velocity_next, velocity, exec) : 0.0;
        copy(velocity_next, velocity, exec);

        result.iterations = k;
        if (check) {
            result.residual = du + dv;
            if (cfg.record_history) {
                result.history.push_back(result.residual);
            }
            if (k >= cfg.min_iters_before_check && result.residual <= stopping_tolerance(cfg, pressure, exec)) {
                result.converged = true;
                break;
            }
        }
        if (k >= cfg.k_max) {
            break;
        }
    }
    check_finite(pressure, cfg.divergence_limit, "fixed-point pressure");
    check_finite(velocity, cfg.divergence_limit, "fixed-point velocity");
    return result;
}

/// Row stage: (U, V) with x derivatives implicit.
///   U_k+1 = A - dt/2 K .* dx(V_k)
///   V_k+1 = B - dt/2 R .* dx(U_k+1)      (U_k for Jacobi coupling)
/// `u` is the full pressure with its boundary columns already set; its
/// interior holds the initial guess and receives the result. `v_bar` holds V_0
/// and receives V*.
template <typename Derivatives>
StageResult adi_rows(const Derivatives& d, MatrixView u, MatrixView v_bar, ConstMatrixView a, ConstMatrixView b,
                     const MaterialField& mat, const AdiConfig& cfg, double dt, Exec exec)
{
    require(u.rows() == u.cols() && u.rows() >= 3, "adi rows: pressure must be square");
    const std::size_t m  = u.rows() - 2;
    const std::size_t nv = v_bar.cols();
    require(v_bar.rows() == m, "adi rows: reduced V has wrong row count");
    require(a.rows() == m && a.cols() == m, "adi rows: A has wrong shape");
    require(b.rows() == m && b.cols() == nv, "adi rows: B has wrong shape");

    const double s      = 0.5 * dt;
    MatrixView   u_int  = interior_view(u);
    MatrixView   u_rows = u.block(1, 0, m, m + 2);
    DenseMatrix  dvx(m, m), dux(m, nv), u_next(m, m), v_next(m, nv);

    return fixed_point(
        u_int, v_bar, u_next, v_next, cfg, exec,
        [&](MatrixView out) {
            d.velocity_dx(v_bar, dvx.view(), exec);
            scaled_update(out, a, s, mat.k, dvx, {}, exec);
        },
        [&](MatrixView out) {
            d.pressure_dx(u_rows, dux.view(), exec);
            scaled_update(out, b, s, mat.rv, dux, {}, exec);
            if constexpr (Derivatives::fixed_velocity_edges) {
                for (std::size_t i = 0; i < m; ++i) {
                    out(i, 0)      = v_bar(i, 0);
                    out(i, nv - 1) = v_bar(i, nv - 1);
                }
            }
        });
}

/// Column stage: (U, W) with y derivatives implicit, mirror of adi_rows.
template <typename Derivatives>
StageResult adi_columns(const Derivatives& d, MatrixView u, MatrixView w_bar, ConstMatrixView c, ConstMatrixView dd,
                        const MaterialField& mat, const AdiConfig& cfg, double dt, Exec exec)
{
    require(u.rows() == u.cols() && u.rows() >= 3, "adi columns: pressure must be square");
    const std::size_t m  = u.rows() - 2;
    const std::size_t nv = w_bar.rows();
    require(w_bar.cols() == m, "adi columns: reduced W has wrong column count");
    require(c.rows() == m && c.cols() == m, "adi columns: C has wrong shape");
    require(dd.rows() == nv && dd.cols() == m, "adi columns: D has wrong shape");

    const double s      = 0.5 * dt;
    MatrixView   u_int  = interior_view(u);
    MatrixView   u_cols = u.block(0, 1, m + 2, m);
    DenseMatrix  dwy(m, m), duy(nv, m), u_next(m, m), w_next(nv, m);

    return fixed_point(
        u_int, w_bar, u_next, w_next, cfg, exec,
        [&](MatrixView out) {
            d.velocity_dy(w_bar, dwy.view(), exec);
            scaled_update(out, c, s, mat.k, dwy, {}, exec);
        },
        [&](MatrixView out) {
            d.pressure_dy(u_cols, duy.view(), exec);
            scaled_update(out, dd, s, mat.rw, duy, {}, exec);
            if constexpr (Derivatives::fixed_velocity_edges) {
                for (std::size_t j = 0; j < m; ++j) {
                    out(0, j)      = w_bar(0, j);
                    out(nv - 1, j) = w_bar(nv - 1, j);
                }
            }
        });
}

/// One full step from t to t + dt. Boundary data for the intermediate level
/// follow cfg.intermediate, the new level takes the exact values at t + dt;
/// velocity entries outside the reduced matrices are refreshed at t + dt.
template <typename Derivatives>
AdiStepStats time_step(const Derivatives& d, WaveState& st, const MaterialField& mat, const AdiConfig& cfg,
                       const CaseSampler& sampler, double dt, Exec exec)
{
    const Layout& L = sampler.layout();
    require(st.scheme == L.scheme && st.n == L.n, "time step: state does not match the sampler grid");
    const std::size_t m  = L.m;
    const std::size_t p  = L.pressure_size();
    const std::size_t nv = L.velocity_size();
    require(st.u.rows() == p && st.u.cols() == p, "time step: pressure has wrong shape");
    require(st.v.rows() == p && st.v.cols() == nv, "time step: V has wrong shape");
    require(st.w.rows() == nv && st.w.cols() == p, "time step: W has wrong shape");
    require(mat.k.rows() == m && mat.k.cols() == m, "time step: K has wrong shape");
    require(mat.rv.rows() == m && mat.rv.cols() == nv, "time step: R(v) has wrong shape");
    require(mat.rw.rows() == nv && mat.rw.cols() == m, "time step: R(w) has wrong shape");

    const double t0 = st.time;
    const double s  = 0.5 * dt;

    DenseMatrix f0(m, m), f1(m, m), tmp(m, m);
    sampler.source(t0, f0.view());
    sampler.source(t0 + dt, f1.view());

    const ConstMatrixView u_int_m = interior_view(st.u.view());
    const ConstMatrixView v_bar_m = reduced_rows(st.v.view());
    const ConstMatrixView w_bar_m = reduced_cols(st.w.view());

    // A = U^m - dt/2 (K .* dy W^m - F^m)
    DenseMatrix a(m, m);
    d.velocity_dy(w_bar_m, tmp.view(), exec);
    scaled_update(a.view(), u_int_m, s, mat.k, tmp, f0, exec);

    // W* = W^m - dt/2 R .* dy U^m   (explicit in the row stage)
    DenseMatrix w_star(nv, m);
    {
        DenseMatrix duy(nv, m);
        d.pressure_dy(st.u.block(0, 1, p, m), duy.view(), exec);
        scaled_update(w_star.view(), w_bar_m, s, mat.rw, duy, {}, exec);
    }
    if constexpr (Derivatives::fixed_velocity_edges) {
        if (cfg.intermediate == IntermediateBoundary::corrected) {
            sampler.fill_intermediate_boundary(t0, dt, {}, {}, w_star.view());
        } else {
            sampler.fill_w_edges(t0 + s, w_star.view());
        }
    }

    // Row stage, B = V^m.
    DenseMatrix u_star(st.u);
    DenseMatrix v_star(v_bar_m);
    if (cfg.intermediate == IntermediateBoundary::corrected) {
        MatrixView v_edges = Derivatives::fixed_velocity_edges ? v_star.view() : MatrixView{};
        sampler.fill_intermediate_boundary(t0, dt, u_star.view(), v_edges, {});
    } else {
        sampler.fill_pressure_boundary(t0 + s, u_star.view());
        if constexpr (Derivatives::fixed_velocity_edges) {
            sampler.fill_v_edges(t0 + s, v_star.view());
        }
    }
    const StageResult rows = adi_rows(d, u_star.view(), v_star.view(), a, v_bar_m, mat, cfg, dt, exec);

    // C = U* - dt/2 (K .* dx V* - F^m+1)
    DenseMatrix c(m, m);
    d.velocity_dx(v_star, tmp.view(), exec);
    scaled_update(c.view(), interior_view(u_star.view()), s, mat.k, tmp, f1, exec);

    // V^m+1 = V* - dt/2 R .* dx U*   (explicit in the column stage)
    {
        DenseMatrix dux(m, nv);
        d.pressure_dx(u_star.block(1, 0, m, p), dux.view(), exec);
        scaled_update(reduced_rows(st.v.view()), v_star, s, mat.rv, dux, {}, exec);
    }
    if constexpr (Derivatives::fixed_velocity_edges) {
        sampler.fill_v_edges(t0 + dt, reduced_rows(st.v.view()));
    }

    // Column stage, D = W*.
    DenseMatrix u_next(u_star);
    sampler.fill_pressure_boundary(t0 + dt, u_next.view());
    DenseMatrix w_next(w_star);
    if constexpr (Derivatives::fixed_velocity_edges) {
        sampler.fill_w_edges(t0 + dt, w_next.view());
    }
    const StageResult cols = adi_columns(d, u_next.view(), w_next.view(), c, w_star, mat, cfg, dt, exec);

    st.u = std::move(u_next);
    copy(w_next, reduced_cols(st.w.view()), exec);
    sampler.fill_velocity_boundary(t0 + dt, st.v.view(), st.w.view());
    st.time = t0 + dt;

    check_finite(st.u, cfg.divergence_limit, "time step pressure");
    check_finite(st.v, cfg.divergence_limit, "time step V");
    check_finite(st.w, cfg.divergence_limit, "time step W");

    return AdiStepStats{rows.iterations, cols.iterations, rows.residual, cols.residual, rows.converged,
                        cols.converged};
}

} // namespace adiwave::detail
