#pragma once

#include "adiwave/adi.hpp"
#include "adiwave/exec.hpp"
#include "adiwave/fields.hpp"
#include "adiwave/linalg.hpp"
#include "adiwave/manufactured.hpp"
#include "adiwave/operators.hpp"

namespace adiwave {

/// Advances a staggered state by dt in place. Boundary pressures come from the
/// sampler at t + dt/2 (intermediate level) and t + dt; boundary velocity
/// rows/columns are refreshed at t + dt.
///
/// Throws ShapeMismatch for a state or material of the wrong shape and
/// NonFinite when the step produces NaN/Inf or exceeds cfg.divergence_limit.
AdiStepStats mfd_time_step(WaveState& state, const MimeticOperatorSet& ops, const MaterialField& mat,
                           const AdiConfig& cfg, const CaseSampler& sampler, double dt, Exec exec = {});

/// Row stage fixed point
///   U_k+1 = A - dt/2 K .* (V_k D4^T),   V_k+1 = B - dt/2 R .* (U_k+1 G4^T).
/// `u` is the full (N+2)^2 pressure with Dirichlet data in its boundary
/// columns; the interior holds the initial guess and receives U*. `v_bar` is
/// N x (N+1), holds V_0 and receives V*.
StageResult adi_rows_mfd(MatrixView u, MatrixView v_bar, ConstMatrixView a, ConstMatrixView b,
                         const MimeticOperatorSet& ops, const MaterialField& mat, const AdiConfig& cfg, double dt,
                         Exec exec = {});

/// Column stage, mirror of adi_rows_mfd. `w_bar` is (N+1) x N.
StageResult adi_columns_mfd(MatrixView u, MatrixView w_bar, ConstMatrixView c, ConstMatrixView d,
                            const MimeticOperatorSet& ops, const MaterialField& mat, const AdiConfig& cfg, double dt,
                            Exec exec = {});

} // namespace adiwave
