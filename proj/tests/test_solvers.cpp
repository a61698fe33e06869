#include "adiwave/adi.hpp"
#include "adiwave/error.hpp"
#include "adiwave/fields.hpp"
#include "adiwave/linalg.hpp"
#include "adiwave/manufactured.hpp"
#include "adiwave/operators.hpp"
#include "adiwave/simulation.hpp"
#include "adiwave/solver_cfd.hpp"
#include "adiwave/solver_mfd.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace adiwave;

namespace {

ManufacturedCase zero_case()
{
    ManufacturedCase c;
    c.gamma     = 0.0;
    c.amplitude = 0.0;
    return c;
}

DenseMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseMatrix                            m(r, c);
    for (double& x : m.values()) {
        x = dist(rng);
    }
    return m;
}

double relative_distance(ConstMatrixView a, ConstMatrixView b)
{
    return frobenius_distance(a, b) / frobenius_norm(b);
}

AdiConfig config_for(Scheme s)
{
    return s == Scheme::nodal ? default_cfd_config() : default_mfd_config();
}

class BothSchemes : public ::testing::TestWithParam<Scheme>
{
};

} // namespace

TEST(TimeStep, NominalSizes)
{
    // cfl / (N c) with c = 1
    EXPECT_DOUBLE_EQ(time_step_size(0.91, 16, 1.0), 0.056875);
    EXPECT_DOUBLE_EQ(time_step_size(0.81, 16, 1.0), 0.050625);
    Simulation cfd(Scheme::nodal, 16, ManufacturedCase{}, default_cfd_config());
    EXPECT_DOUBLE_EQ(cfd.nominal_dt(), 0.056875);
    Simulation mfd(Scheme::staggered, 16, ManufacturedCase{}, default_mfd_config());
    EXPECT_DOUBLE_EQ(mfd.nominal_dt(), 0.050625);
}

TEST(AdiConfigTest, Validation)
{
    AdiConfig c;
    EXPECT_NO_THROW(c.validate());
    c.cfl = 0.0;
    EXPECT_THROW(c.validate(), ConfigError);
    c     = AdiConfig{};
    c.eps = -1.0;
    EXPECT_THROW(c.validate(), ConfigError);
    c                        = AdiConfig{};
    c.min_iters_before_check = 9;
    EXPECT_THROW(c.validate(), ConfigError);
    c       = AdiConfig{};
    c.k_max = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    EXPECT_THROW(Simulation(Scheme::nodal, 16, ManufacturedCase{}, c), ConfigError);
}

TEST_P(BothSchemes, ZeroStateIsAFixedPoint)
{
    Simulation sim(GetParam(), 16, zero_case(), config_for(GetParam()));
    sim.advance(5);
    EXPECT_EQ(max_abs(sim.state().u.view()), 0.0);
    EXPECT_EQ(max_abs(sim.state().v.view()), 0.0);
    EXPECT_EQ(max_abs(sim.state().w.view()), 0.0);
}

TEST_P(BothSchemes, InnerIterationsWithinBand)
{
    Simulation sim(GetParam(), 64, ManufacturedCase{}, config_for(GetParam()));
    for (int i = 0; i < 5; ++i) {
        const AdiStepStats s = sim.step(sim.nominal_dt());
        EXPECT_GE(s.inner_iters_rows, 6);
        EXPECT_LE(s.inner_iters_rows, 8);
        EXPECT_GE(s.inner_iters_cols, 6);
        EXPECT_LE(s.inner_iters_cols, 8);
    }
}

TEST_P(BothSchemes, HugeToleranceStopsAtFirstCheck)
{
    AdiConfig cfg = config_for(GetParam());
    cfg.eps       = 1e300;
    for (int min_check : {1, 3, 6}) {
        cfg.min_iters_before_check = min_check;
        Simulation         sim(GetParam(), 16, ManufacturedCase{}, cfg);
        const AdiStepStats s = sim.step(sim.nominal_dt());
        EXPECT_EQ(s.inner_iters_rows, min_check);
        EXPECT_EQ(s.inner_iters_cols, min_check);
        EXPECT_TRUE(s.converged_rows);
    }
}

TEST_P(BothSchemes, SeidelNeedsNoMoreIterationsThanJacobi)
{
    AdiConfig seidel              = config_for(GetParam());
    // The staggered fixed point contracts by ~0.98 per iteration.
    seidel.k_max                  = 20000;
    seidel.min_iters_before_check = 1;
    seidel.eps                    = 1e-8;
    AdiConfig jacobi              = seidel;
    jacobi.coupling               = Coupling::jacobi;

    Simulation a(GetParam(), 32, ManufacturedCase{}, seidel);
    Simulation b(GetParam(), 32, ManufacturedCase{}, jacobi);
    const AdiStepStats sa = a.step(a.nominal_dt());
    const AdiStepStats sb = b.step(b.nominal_dt());
    EXPECT_TRUE(sa.converged_rows && sa.converged_cols);
    EXPECT_TRUE(sb.converged_rows && sb.converged_cols);
    EXPECT_LE(sa.inner_iters_rows, sb.inner_iters_rows);
    EXPECT_LE(sa.inner_iters_cols, sb.inner_iters_cols);
    // Both reach the same fixed point.
    EXPECT_LT(relative_distance(a.state().u.view(), b.state().u.view()), 1e-6);
}

TEST_P(BothSchemes, WorkerCountDoesNotChangeTheResult)
{
    const ManufacturedCase c{.gamma = 2.0, .k = 2};
    Simulation             ref(GetParam(), 48, c, config_for(GetParam()), Exec{1});
    ref.advance(10);
    for (int w : {2, 4}) {
        Simulation sim(GetParam(), 48, c, config_for(GetParam()), Exec{w});
        sim.advance(10);
        EXPECT_LE(relative_distance(sim.state().u.view(), ref.state().u.view()), 1e-12) << "workers " << w;
    }
}

TEST_P(BothSchemes, StableAtCflMax)
{
    Simulation   sim(GetParam(), 64, ManufacturedCase{}, config_for(GetParam()));
    const double initial = frobenius_norm(sim.state().u.view());
    sim.run_until(5.0 * ManufacturedCase{}.period);
    EXPECT_LT(frobenius_norm(sim.state().u.view()), 2.0 * initial);
    EXPECT_LT(sim.pressure_error(), 0.1);
}

TEST_P(BothSchemes, DivergesAboveCflMax)
{
    AdiConfig cfg = config_for(GetParam());
    cfg.cfl       = GetParam() == Scheme::nodal ? 1.5 : 1.3;
    Simulation sim(GetParam(), 64, ManufacturedCase{}, cfg);
    EXPECT_THROW(sim.run_until(5.0 * ManufacturedCase{}.period), NonFinite);
}

TEST_P(BothSchemes, RunUntilLandsOnTheEndTime)
{
    Simulation     sim(GetParam(), 16, ManufacturedCase{}, config_for(GetParam()));
    const double   t_end = 0.3;
    const RunStats s     = sim.run_until(t_end);
    EXPECT_DOUBLE_EQ(sim.state().time, t_end);
    EXPECT_EQ(s.steps, static_cast<std::size_t>(std::ceil(t_end / sim.nominal_dt())));
    EXPECT_EQ(s.stage_count, 2 * s.steps);
}

TEST_P(BothSchemes, ShortRunIsAccurate)
{
    // One period at moderate resolution: error well below the solution scale.
    for (ErrorNorm norm : {ErrorNorm::discrete_l2, ErrorNorm::frobenius}) {
        Simulation sim(GetParam(), 32, ManufacturedCase{}, config_for(GetParam()));
        EXPECT_EQ(sim.pressure_error(norm), 0.0);
        sim.run_until(ManufacturedCase{}.period);
        EXPECT_GT(sim.pressure_error(norm), 0.0);
    }
    Simulation sim(GetParam(), 32, ManufacturedCase{}, config_for(GetParam()));
    sim.run_until(ManufacturedCase{}.period);
    EXPECT_DOUBLE_EQ(sim.pressure_error(ErrorNorm::discrete_l2) * 32.0, sim.pressure_error(ErrorNorm::frobenius));
    EXPECT_LT(sim.pressure_error(), 0.1);
}

TEST_P(BothSchemes, TemporalOrderIsTwo)
{
    // Same grid, dt halved twice: the time-discretization error shrinks by ~4.
    // The staggered scheme is only asymptotic below cfl ~0.2 at N = 32.
    auto run = [&](double cfl) {
        AdiConfig cfg              = config_for(GetParam());
        cfg.cfl                    = cfl;
        cfg.eps                    = 1e-13;
        cfg.k_max                  = 20000;
        cfg.min_iters_before_check = 1;
        Simulation sim(GetParam(), 32, ManufacturedCase{}, cfg);
        sim.run_until(0.25);
        return DenseMatrix(sim.state().u);
    };
    const DenseMatrix u1 = run(0.2);
    const DenseMatrix u2 = run(0.1);
    const DenseMatrix u4 = run(0.05);
    const double      ratio =
        frobenius_distance(u1.view(), u2.view()) / frobenius_distance(u2.view(), u4.view());
    EXPECT_NEAR(ratio, 4.0, 0.6);
}

INSTANTIATE_TEST_SUITE_P(Solvers, BothSchemes, ::testing::Values(Scheme::nodal, Scheme::staggered),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(MfdStage, ResidualContracts)
{
    AdiConfig cfg      = default_mfd_config();
    cfg.record_history = true;
    cfg.eps            = 1e-300;
    cfg.k_max          = 8;

    const std::size_t n = 32;
    const auto        ops = build_mimetic_operators(n, 1.0 / n);
    const auto        mat = uniform_material(Scheme::staggered, n, 1.0, 1.0);
    std::mt19937_64   rng(7);
    DenseMatrix       u     = random_matrix(n + 2, n + 2, rng);
    DenseMatrix       v_bar = random_matrix(n, n + 1, rng);
    const DenseMatrix a     = random_matrix(n, n, rng);
    const DenseMatrix b     = random_matrix(n, n + 1, rng);

    const StageResult r =
        adi_rows_mfd(u.view(), v_bar.view(), a.view(), b.view(), ops, mat, cfg, time_step_size(0.81, n, 1.0));
    ASSERT_EQ(r.history.size(), 8u);
    for (std::size_t i = 2; i < r.history.size(); ++i) {
        EXPECT_LT(r.history[i], r.history[i - 1]) << "iteration " << i + 1;
    }
}

TEST(CfdStage, ConsistentDataConvergesImmediately)
{
    // With A, B built from a pair (U, V) that already solves the stage
    // equations and (U, V) as the initial guess, the first residual is ~0.
    const std::size_t n   = 24;
    const double      dt  = time_step_size(0.91, n, 1.0);
    const auto        ops = build_cfd_operators(n, 1.0 / n);
    const auto        mat = uniform_material(Scheme::nodal, n, 1.0, 1.0);
    std::mt19937_64   rng(11);
    DenseMatrix       u     = random_matrix(n + 1, n + 1, rng);
    DenseMatrix       v_bar = random_matrix(n - 1, n + 1, rng);

    // A = U + dt/2 K dx(V),  B = V + dt/2 R dx(U), with dx as used by the stage.
    const DenseMatrix dv = cfd_differentiate_rows(ops, v_bar.view(), Reduction::reduced);
    const DenseMatrix du = cfd_differentiate_rows(ops, reduced_rows(u.view()), Reduction::full);
    DenseMatrix       a(n - 1, n - 1);
    DenseMatrix       b(n - 1, n + 1);
    for (std::size_t i = 0; i < n - 1; ++i) {
        for (std::size_t j = 0; j < n - 1; ++j) {
            a(i, j) = u(i + 1, j + 1) + 0.5 * dt * dv(i, j);
        }
        for (std::size_t j = 0; j < n + 1; ++j) {
            b(i, j) = v_bar(i, j) + 0.5 * dt * du(i, j);
        }
    }

    AdiConfig cfg              = default_cfd_config();
    cfg.min_iters_before_check = 1;
    cfg.tolerance              = ToleranceMode::absolute;
    cfg.eps                    = 1e-11;
    const DenseMatrix u0       = u;
    const StageResult r = adi_rows_cfd(u.view(), v_bar.view(), a.view(), b.view(), ops, mat, cfg, dt);
    EXPECT_EQ(r.iterations, 1);
    EXPECT_TRUE(r.converged);
    EXPECT_LT(frobenius_distance(u.view(), u0.view()), 1e-11);
}

namespace {

template <typename Ops, typename Rows, typename Cols>
void check_transpose_symmetry(Scheme scheme, std::size_t n, std::size_t m, const Ops& ops, Rows rows, Cols cols)
{
    // The column stage on transposed data is the transpose of the row stage.
    const double    dt  = time_step_size(0.8, n, 1.0);
    const auto      mat = uniform_material(scheme, n, 1.0, 1.0);
    std::mt19937_64 rng(3);
    DenseMatrix     u     = random_matrix(m + 2, m + 2, rng);
    DenseMatrix     v_bar = random_matrix(m, n + 1, rng);
    DenseMatrix     a     = random_matrix(m, m, rng);
    DenseMatrix     b     = random_matrix(m, n + 1, rng);
    DenseMatrix     ut    = u.transposed();
    DenseMatrix     wt    = v_bar.transposed();
    DenseMatrix     at    = a.transposed();
    DenseMatrix     bt    = b.transposed();

    AdiConfig cfg = scheme == Scheme::nodal ? default_cfd_config() : default_mfd_config();
    const StageResult r1 = rows(u.view(), v_bar.view(), a.view(), b.view(), ops, mat, cfg, dt);
    const StageResult r2 = cols(ut.view(), wt.view(), at.view(), bt.view(), ops, mat, cfg, dt);
    EXPECT_EQ(r1.iterations, r2.iterations);
    EXPECT_LE(frobenius_distance(u.view(), ut.transposed().view()), 1e-12 * frobenius_norm(u.view()));
    EXPECT_LE(frobenius_distance(v_bar.view(), wt.transposed().view()), 1e-12 * frobenius_norm(v_bar.view()));
}

} // namespace

TEST(Stages, ColumnStageIsTransposedRowStage)
{
    const std::size_t n = 20;
    check_transpose_symmetry(Scheme::nodal, n, n - 1, build_cfd_operators(n, 1.0 / n),
                             [](auto... a) { return adi_rows_cfd(a...); },
                             [](auto... a) { return adi_columns_cfd(a...); });
    check_transpose_symmetry(Scheme::staggered, n, n, build_mimetic_operators(n, 1.0 / n),
                             [](auto... a) { return adi_rows_mfd(a...); },
                             [](auto... a) { return adi_columns_mfd(a...); });
}

TEST(Stages, ShapeChecks)
{
    const std::size_t n   = 16;
    const auto        ops = build_mimetic_operators(n, 1.0 / n);
    const auto        mat = uniform_material(Scheme::staggered, n, 1.0, 1.0);
    DenseMatrix       u(n + 2, n + 2);
    DenseMatrix       v_bar(n, n);
    DenseMatrix       a(n, n);
    DenseMatrix       b(n, n + 1);
    EXPECT_THROW(adi_rows_mfd(u.view(), v_bar.view(), a.view(), b.view(), ops, mat, default_mfd_config(), 0.01),
                 ShapeMismatch);

    WaveState wrong = allocate_state(Scheme::nodal, n);
    const CaseSampler sampler(ManufacturedCase{}, Scheme::staggered, n);
    EXPECT_THROW(mfd_time_step(wrong, ops, mat, default_mfd_config(), sampler, 0.01), ShapeMismatch);
}

TEST(Simulation, NonFiniteInputIsReported)
{
    Simulation sim(Scheme::staggered, 16, ManufacturedCase{}, default_mfd_config());
    sim.state().u(5, 5) = std::nan("");
    EXPECT_THROW(sim.step(sim.nominal_dt()), NonFinite);
}

TEST(Simulation, TooSmallGrid)
{
    EXPECT_THROW(Simulation(Scheme::nodal, 4, ManufacturedCase{}, default_cfd_config()), TooSmallGrid);
}
