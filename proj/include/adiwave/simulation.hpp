#pragma once

#include "adiwave/adi.hpp"
#include "adiwave/exec.hpp"
#include "adiwave/fields.hpp"
#include "adiwave/manufactured.hpp"
#include "adiwave/operators.hpp"

#include <cstddef>
#include <variant>

namespace adiwave {

/// How the interior pressure error is measured. discrete_l2 is
/// h * ||E||_F, the grid approximation of the continuous L2 norm on the unit
/// square; frobenius is the unscaled ||E||_F.
enum class ErrorNorm { discrete_l2, frobenius };

[[nodiscard]] const char* to_string(ErrorNorm n);

/// Totals over a sequence of steps.
struct RunStats
{
    std::size_t steps           = 0;
    std::size_t stage_count     = 0; // two per step
    std::size_t total_inner     = 0;
    int         max_inner_iters = 0;

    [[nodiscard]] double mean_inner_iters() const;
    void                 add(const AdiStepStats& s);
};

/// One manufactured-solution run: operators, material, sampler and state for
/// either scheme. Starts from the exact state at t = 0.
class Simulation
{
  public:
    Simulation(Scheme scheme, std::size_t n, const ManufacturedCase& c, const AdiConfig& cfg, Exec exec = {});

    [[nodiscard]] Scheme             scheme() const { return scheme_; }
    [[nodiscard]] std::size_t        cells() const { return n_; }
    [[nodiscard]] const WaveState&   state() const { return state_; }
    [[nodiscard]] WaveState&         state() { return state_; }
    [[nodiscard]] const AdiConfig&   config() const { return cfg_; }
    [[nodiscard]] const CaseSampler& sampler() const { return sampler_; }
    [[nodiscard]] const MaterialField& material() const { return material_; }

    /// cfl / (N c_max).
    [[nodiscard]] double nominal_dt() const { return dt_; }

    AdiStepStats step(double dt);

    /// Fixed-size steps, `count` of them.
    RunStats advance(std::size_t count);

    /// Steps of nominal_dt until t_end, the last one shortened to land on it.
    RunStats run_until(double t_end);

    /// Norm of U - U_exact over the unknown (interior) pressures.
    [[nodiscard]] double pressure_error(ErrorNorm norm = ErrorNorm::discrete_l2) const;

  private:
    Scheme                                             scheme_;
    std::size_t                                        n_;
    AdiConfig                                          cfg_;
    Exec                                               exec_;
    std::variant<CfdOperatorSet, MimeticOperatorSet> ops_;
    MaterialField                                      material_;
    CaseSampler                                        sampler_;
    WaveState                                          state_;
    double                                             dt_;
};

} // namespace adiwave
