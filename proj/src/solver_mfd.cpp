#include "adiwave/solver_mfd.hpp"

#include "adi_engine.hpp"

namespace adiwave {

namespace {

struct MimeticDerivatives
{
    static constexpr bool fixed_velocity_edges = false;

    const MimeticOperatorSet& ops;

    void velocity_dx(ConstMatrixView v, MatrixView out, Exec exec) const
    {
        apply_right_transpose(v, ops.d4, out, exec);
    }
    void pressure_dx(ConstMatrixView u, MatrixView out, Exec exec) const
    {
        apply_right_transpose(u, ops.g4, out, exec);
    }
    void velocity_dy(ConstMatrixView w, MatrixView out, Exec exec) const { apply_left(ops.d4, w, out, exec); }
    void pressure_dy(ConstMatrixView u, MatrixView out, Exec exec) const { apply_left(ops.g4, u, out, exec); }
};

} // namespace

AdiStepStats mfd_time_step(WaveState& state, const MimeticOperatorSet& ops, const MaterialField& mat,
                           const AdiConfig& cfg, const CaseSampler& sampler, double dt, Exec exec)
{
    detail::require(state.scheme == Scheme::staggered && state.n == ops.n,
                    "mfd step: state is not a staggered grid of N cells");
    return detail::time_step(MimeticDerivatives{ops}, state, mat, cfg, sampler, dt, exec);
}

StageResult adi_rows_mfd(MatrixView u, MatrixView v_bar, ConstMatrixView a, ConstMatrixView b,
                         const MimeticOperatorSet& ops, const MaterialField& mat, const AdiConfig& cfg, double dt,
                         Exec exec)
{
    detail::require(u.rows() == ops.n + 2, "mfd rows: pressure must be (N+2) x (N+2)");
    detail::require(v_bar.cols() == ops.n + 1, "mfd rows: reduced V must have N+1 columns");
    return detail::adi_rows(MimeticDerivatives{ops}, u, v_bar, a, b, mat, cfg, dt, exec);
}

StageResult adi_columns_mfd(MatrixView u, MatrixView w_bar, ConstMatrixView c, ConstMatrixView d,
                            const MimeticOperatorSet& ops, const MaterialField& mat, const AdiConfig& cfg, double dt,
                            Exec exec)
{
    detail::require(u.rows() == ops.n + 2, "mfd columns: pressure must be (N+2) x (N+2)");
    detail::require(w_bar.rows() == ops.n + 1, "mfd columns: reduced W must have N+1 rows");
    return detail::adi_columns(MimeticDerivatives{ops}, u, w_bar, c, d, mat, cfg, dt, exec);
}

} // namespace adiwave
