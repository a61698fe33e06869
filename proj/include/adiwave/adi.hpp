#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace adiwave {

/// How the pressure and velocity updates inside one fixed-point iteration
/// are chained.
enum class Coupling
{
    seidel, // velocity update reads the pressure just computed
    jacobi, // both updates read the previous iterate
};

enum class ToleranceMode
{
    relative, // stop when residual <= eps * ||U_k+1||
    absolute, // stop when residual <= eps
};

/// Boundary data for the intermediate level U* of the splitting.
enum class IntermediateBoundary
{
    corrected, // value implied by the two stages (see CaseSampler::fill_intermediate_boundary)
    midpoint,  // exact solution at t + dt/2
};

std::string_view to_string(Coupling c);
std::string_view to_string(IntermediateBoundary b);

/// Inner fixed-point iteration and time-step settings.
struct AdiConfig
{
    double        cfl                    = 0.91;
    double        eps                    = 1e-9;
    ToleranceMode tolerance              = ToleranceMode::relative;
    int           k_max                  = 8;
    int           min_iters_before_check = 6;
    Coupling      coupling               = Coupling::seidel;
    IntermediateBoundary intermediate    = IntermediateBoundary::corrected;
    // A step whose pressure exceeds this magnitude is reported as NonFinite.
    double divergence_limit = 1e10;
    // Compute the residual on every iteration and keep the sequence.
    bool record_history = false;

    /// Throws ConfigError unless 0 < cfl <= 2, eps > 0 and
    /// 1 <= min_iters_before_check <= k_max.
    void validate() const;
};

/// Defaults per scheme: cfl 0.91 (nodal compact) and 0.81 (staggered mimetic).
AdiConfig default_cfd_config();
AdiConfig default_mfd_config();

struct StageResult
{
    int                 iterations = 0;
    double              residual   = 0.0; // last evaluated ||dU|| + ||dV||
    bool                converged  = false;
    std::vector<double> history;          // filled when record_history is set
};

struct AdiStepStats
{
    int    inner_iters_rows    = 0;
    int    inner_iters_cols    = 0;
    double final_residual_rows = 0.0;
    double final_residual_cols = 0.0;
    bool   converged_rows      = false;
    bool   converged_cols      = false;
};

/// dt = cfl / (N c_max).
double time_step_size(double cfl, std::size_t n, double c_max);

} // namespace adiwave
