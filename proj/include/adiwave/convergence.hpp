#pragma once

#include "adiwave/adi.hpp"
#include "adiwave/exec.hpp"
#include "adiwave/fields.hpp"
#include "adiwave/manufactured.hpp"
#include "adiwave/simulation.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace adiwave {

/// Full grid ladder of the convergence study.
inline constexpr std::size_t kDefaultLadder[] = {16, 24, 32, 48, 64, 96, 128, 256, 512, 1024};

struct CaseResult
{
    Scheme      scheme = Scheme::nodal;
    std::size_t n      = 0;
    double      h      = 0.0;
    double      dt     = 0.0;
    std::size_t steps  = 0;
    double      error  = 0.0; // interior pressure error at the final time
    double      mean_inner_iters = 0.0;
    int         max_inner_iters  = 0;
    double      wall_time_s      = 0.0;
};

/// Integrates from t = 0 to periods * T (final step shortened to land on it)
/// and measures the interior pressure error. NonFinite propagates.
CaseResult run_case(Scheme scheme, const ManufacturedCase& c, std::size_t n, const AdiConfig& cfg,
                    double periods = 5.0, Exec exec = {}, ErrorNorm norm = ErrorNorm::discrete_l2);

/// rate_i = ln(e_{i-1} / e_i) / ln(N_i / N_{i-1}); one entry per adjacent pair.
/// Throws NonPositiveError for a non-positive error, ConfigError for
/// mismatched lengths or a ladder that is not strictly increasing.
std::vector<double> estimate_rates(std::span<const double> errors, std::span<const std::size_t> ns);

/// Mean after dropping one maximum and one minimum. Throws TooFewRates below 3.
double trimmed_average(std::span<const double> rates);

struct ConvergenceReport
{
    Scheme                scheme = Scheme::nodal;
    ManufacturedCase      manufactured;
    AdiConfig             config;
    ErrorNorm             norm = ErrorNorm::discrete_l2;
    std::vector<CaseResult> entries;
    std::vector<double>   rates; // entries.size() - 1
    std::optional<double> average; // trimmed average, when there are >= 3 rates

    [[nodiscard]] int max_inner_iters() const;
};

ConvergenceReport run_convergence(Scheme scheme, const ManufacturedCase& c, std::span<const std::size_t> ladder,
                                  const AdiConfig& cfg, double periods = 5.0, Exec exec = {},
                                  ErrorNorm norm = ErrorNorm::discrete_l2);

/// Header `scheme,gamma,k,N,h,dt,steps,error_fro,rate,avg_inner_iters,wall_time_s`,
/// one row per N (empty rate on the first), then an AVERAGE row. With
/// `timing` false the wall-time column is left empty so the output is
/// reproducible byte for byte.
void write_convergence_csv(std::ostream& os, const ConvergenceReport& report, bool timing = true);

} // namespace adiwave
