#include "adiwave/simulation.hpp"

#include "adiwave/error.hpp"
#include "adiwave/solver_cfd.hpp"
#include "adiwave/solver_mfd.hpp"

#include <algorithm>
#include <cmath>

namespace adiwave {

namespace {

std::variant<CfdOperatorSet, MimeticOperatorSet> make_operators(Scheme scheme, std::size_t n)
{
    const double h = 1.0 / static_cast<double>(n);
    if (scheme == Scheme::nodal) {
        return build_cfd_operators(n, h);
    }
    return build_mimetic_operators(n, h);
}

const ManufacturedCase& validated(const ManufacturedCase& c)
{
    c.validate();
    return c;
}

const AdiConfig& validated(const AdiConfig& cfg)
{
    cfg.validate();
    return cfg;
}

} // namespace

double RunStats::mean_inner_iters() const
{
    return stage_count == 0 ? 0.0 : static_cast<double>(total_inner) / static_cast<double>(stage_count);
}

void RunStats::add(const AdiStepStats& s)
{
    ++steps;
    stage_count += 2;
    total_inner += static_cast<std::size_t>(s.inner_iters_rows + s.inner_iters_cols);
    max_inner_iters = std::max({max_inner_iters, s.inner_iters_rows, s.inner_iters_cols});
}

Simulation::Simulation(Scheme scheme, std::size_t n, const ManufacturedCase& c, const AdiConfig& cfg, Exec exec)
    : scheme_(scheme),
      n_(n),
      cfg_(validated(cfg)),
      exec_(exec),
      ops_(make_operators(scheme, n)),
      material_(uniform_material(scheme, n, validated(c).kappa, c.rho)),
      sampler_(c, scheme, n),
      state_(sampler_.exact_state(0.0)),
      dt_(0.0)
{
    if (exec_.workers < 1) {
        throw ConfigError("workers must be at least 1");
    }
    dt_ = time_step_size(cfg_.cfl, n_, material_.max_wave_speed());
}

AdiStepStats Simulation::step(double dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("time step must be positive");
    }
    if (const auto* cfd = std::get_if<CfdOperatorSet>(&ops_)) {
        return cfd_time_step(state_, *cfd, material_, cfg_, sampler_, dt, exec_);
    }
    return mfd_time_step(state_, std::get<MimeticOperatorSet>(ops_), material_, cfg_, sampler_, dt, exec_);
}

RunStats Simulation::advance(std::size_t count)
{
    RunStats stats;
    for (std::size_t i = 0; i < count; ++i) {
        stats.add(step(dt_));
    }
    return stats;
}

RunStats Simulation::run_until(double t_end)
{
    RunStats stats;
    // Steps shorter than this fraction of dt are merged into the previous one.
    const double slack = 1e-9 * dt_;
    while (t_end - state_.time > slack) {
        const double remaining = t_end - state_.time;
        const double dt        = remaining < dt_ + slack ? remaining : dt_;
        stats.add(step(dt));
    }
    state_.time = std::max(state_.time, t_end);
    return stats;
}

const char* to_string(ErrorNorm n)
{
    return n == ErrorNorm::frobenius ? "frobenius" : "discrete_l2";
}

double Simulation::pressure_error(ErrorNorm norm) const
{
    const WaveState exact = sampler_.exact_state(state_.time);
    const double    fro   = frobenius_distance(interior_view(state_.u.view()), interior_view(exact.u.view()), exec_);
    return norm == ErrorNorm::frobenius ? fro : fro / static_cast<double>(n_);
}

} // namespace adiwave
