#include "adiwave/adi.hpp"

#include "adiwave/error.hpp"

#include <cmath>
#include <cstddef>

namespace adiwave {

std::string_view to_string(Coupling c)
{
    return c == Coupling::seidel ? "seidel" : "jacobi";
}

std::string_view to_string(IntermediateBoundary b)
{
    return b == IntermediateBoundary::corrected ? "corrected" : "midpoint";
}

void AdiConfig::validate() const
{
    // The upper cfl bound is loose on purpose: stability tests run past the
    // schemes' limits.
    if (!(cfl > 0.0) || !(cfl <= 2.0)) {
        throw ConfigError("cfl must lie in (0, 2]");
    }
    if (!(eps > 0.0)) {
        throw ConfigError("eps must be positive");
    }
    if (min_iters_before_check < 1 || min_iters_before_check > k_max) {
        throw ConfigError("need 1 <= min_iters_before_check <= k_max");
    }
    if (!(divergence_limit > 0.0)) {
        throw ConfigError("divergence_limit must be positive");
    }
}

AdiConfig default_cfd_config()
{
    return AdiConfig{};
}

AdiConfig default_mfd_config()
{
    AdiConfig c;
    c.cfl = 0.81;
    return c;
}

double time_step_size(double cfl, std::size_t n, double c_max)
{
    if (!(c_max > 0.0) || n == 0) {
        throw ConfigError("time step needs N > 0 and a positive wave speed");
    }
    return cfl / (static_cast<double>(n) * c_max);
}

} // namespace adiwave
