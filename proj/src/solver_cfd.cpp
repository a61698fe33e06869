#include "adiwave/solver_cfd.hpp"

#include "adi_engine.hpp"

namespace adiwave {

namespace {

struct CfdDerivatives
{
    static constexpr bool fixed_velocity_edges = true;

    const CfdOperatorSet& ops;

    void velocity_dx(ConstMatrixView v, MatrixView out, Exec exec) const
    {
        cfd_dx(ops, v, out, Reduction::reduced, exec);
    }
    void pressure_dx(ConstMatrixView u, MatrixView out, Exec exec) const
    {
        cfd_dx(ops, u, out, Reduction::full, exec);
    }
    void velocity_dy(ConstMatrixView w, MatrixView out, Exec exec) const
    {
        cfd_dy(ops, w, out, Reduction::reduced, exec);
    }
    void pressure_dy(ConstMatrixView u, MatrixView out, Exec exec) const
    {
        cfd_dy(ops, u, out, Reduction::full, exec);
    }
};

} // namespace

AdiStepStats cfd_time_step(WaveState& state, const CfdOperatorSet& ops, const MaterialField& mat,
                           const AdiConfig& cfg, const CaseSampler& sampler, double dt, Exec exec)
{
    detail::require(state.scheme == Scheme::nodal && state.n == ops.n, "cfd step: state is not a nodal grid of N cells");
    return detail::time_step(CfdDerivatives{ops}, state, mat, cfg, sampler, dt, exec);
}

StageResult adi_rows_cfd(MatrixView u, MatrixView v_bar, ConstMatrixView a, ConstMatrixView b,
                         const CfdOperatorSet& ops, const MaterialField& mat, const AdiConfig& cfg, double dt,
                         Exec exec)
{
    detail::require(u.rows() == ops.n + 1, "cfd rows: pressure must be (N+1) x (N+1)");
    detail::require(v_bar.cols() == ops.n + 1, "cfd rows: reduced V must have N+1 columns");
    return detail::adi_rows(CfdDerivatives{ops}, u, v_bar, a, b, mat, cfg, dt, exec);
}

StageResult adi_columns_cfd(MatrixView u, MatrixView w_bar, ConstMatrixView c, ConstMatrixView d,
                            const CfdOperatorSet& ops, const MaterialField& mat, const AdiConfig& cfg, double dt,
                            Exec exec)
{
    detail::require(u.rows() == ops.n + 1, "cfd columns: pressure must be (N+1) x (N+1)");
    detail::require(w_bar.rows() == ops.n + 1, "cfd columns: reduced W must have N+1 rows");
    return detail::adi_columns(CfdDerivatives{ops}, u, w_bar, c, d, mat, cfg, dt, exec);
}

} // namespace adiwave
