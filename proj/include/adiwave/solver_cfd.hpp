#pragma once

#include "adiwave/adi.hpp"
#include "adiwave/exec.hpp"
#include "adiwave/fields.hpp"
#include "adiwave/linalg.hpp"
#include "adiwave/manufactured.hpp"
#include "adiwave/operators.hpp"

namespace adiwave {

/// Advances a nodal state by dt in place. Boundary pressures come from the
/// sampler at t + dt/2 (intermediate level) and t + dt; boundary velocity
/// rows/columns are refreshed at t + dt.
///
/// Throws ShapeMismatch for a state or material of the wrong shape and
/// NonFinite when the step produces NaN/Inf or exceeds cfg.divergence_limit.
AdiStepStats cfd_time_step(WaveState& state, const CfdOperatorSet& ops, const MaterialField& mat,
                           const AdiConfig& cfg, const CaseSampler& sampler, double dt, Exec exec = {});

/// Row stage fixed point
///   U_k+1 = A - dt/2 K .* dx(V_k),   V_k+1 = B - dt/2 R .* dx(U_k+1)
/// where dx is the compact derivative (reduced pair for V, full pair for U)
/// with A, B already in solved form (A = U^m - dt/2 (K .* dy W^m - F^m),
/// B = V̄^m). `u` is the full (N+1)^2 pressure: its boundary columns must hold
/// Dirichlet data, its interior holds the initial guess and receives U*.
/// `v_bar` is (N-1) x (N+1), holds V_0 and receives V*.
StageResult adi_rows_cfd(MatrixView u, MatrixView v_bar, ConstMatrixView a, ConstMatrixView b,
                         const CfdOperatorSet& ops, const MaterialField& mat, const AdiConfig& cfg, double dt,
                         Exec exec = {});

/// Column stage, mirror of adi_rows_cfd. `w_bar` is (N+1) x (N-1).
StageResult adi_columns_cfd(MatrixView u, MatrixView w_bar, ConstMatrixView c, ConstMatrixView d,
                            const CfdOperatorSet& ops, const MaterialField& mat, const AdiConfig& cfg, double dt,
                            Exec exec = {});

} // namespace adiwave
