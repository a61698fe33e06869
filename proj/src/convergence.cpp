#include "adiwave/convergence.hpp"

#include "adiwave/error.hpp"
#include "adiwave/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

namespace adiwave {

CaseResult run_case(Scheme scheme, const ManufacturedCase& c, std::size_t n, const AdiConfig& cfg, double periods,
                    Exec exec, ErrorNorm norm)
{
    if (!(periods > 0.0)) {
        throw ConfigError("periods must be positive");
    }
    Simulation sim(scheme, n, c, cfg, exec);

    const auto     start = std::chrono::steady_clock::now();
    const RunStats stats = sim.run_until(periods * c.period);
    const auto     stop  = std::chrono::steady_clock::now();

    CaseResult r;
    r.scheme           = scheme;
    r.n                = n;
    r.h                = 1.0 / static_cast<double>(n);
    r.dt               = sim.nominal_dt();
    r.steps            = stats.steps;
    r.error            = sim.pressure_error(norm);
    r.mean_inner_iters = stats.mean_inner_iters();
    r.max_inner_iters  = stats.max_inner_iters;
    r.wall_time_s      = std::chrono::duration<double>(stop - start).count();
    return r;
}

std::vector<double> estimate_rates(std::span<const double> errors, std::span<const std::size_t> ns)
{
    if (errors.size() != ns.size()) {
        throw ConfigError("errors and grid sizes differ in length");
    }
    for (double e : errors) {
        if (!(e > 0.0)) {
            throw NonPositiveError("rate estimation needs positive errors");
        }
    }
    std::vector<double> rates;
    for (std::size_t i = 1; i < errors.size(); ++i) {
        if (ns[i] <= ns[i - 1]) {
            throw ConfigError("grid sizes must be strictly increasing");
        }
        rates.push_back(std::log(errors[i - 1] / errors[i]) /
                        std::log(static_cast<double>(ns[i]) / static_cast<double>(ns[i - 1])));
    }
    return rates;
}

double trimmed_average(std::span<const double> rates)
{
    if (rates.size() < 3) {
        throw TooFewRates("trimmed average needs at least 3 rates");
    }
    std::vector<double> sorted(rates.begin(), rates.end());
    std::sort(sorted.begin(), sorted.end());
    const double sum = std::accumulate(sorted.begin() + 1, sorted.end() - 1, 0.0);
    return sum / static_cast<double>(sorted.size() - 2);
}

int ConvergenceReport::max_inner_iters() const
{
    int m = 0;
    for (const auto& e : entries) {
        m = std::max(m, e.max_inner_iters);
    }
    return m;
}

ConvergenceReport run_convergence(Scheme scheme, const ManufacturedCase& c, std::span<const std::size_t> ladder,
                                  const AdiConfig& cfg, double periods, Exec exec,
                                  ErrorNorm norm)
{
    if (ladder.empty()) {
        throw ConfigError("empty grid ladder");
    }
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        if (ladder[i] <= ladder[i - 1]) {
            throw ConfigError("grid sizes must be strictly increasing");
        }
    }
    ConvergenceReport rep;
    rep.scheme       = scheme;
    rep.manufactured = c;
    rep.config       = cfg;
    rep.norm         = norm;

    std::vector<double> errors;
    for (std::size_t n : ladder) {
        rep.entries.push_back(run_case(scheme, c, n, cfg, periods, exec, norm));
        errors.push_back(rep.entries.back().error);
    }
    rep.rates = estimate_rates(errors, ladder);
    if (rep.rates.size() >= 3) {
        rep.average = trimmed_average(rep.rates);
    }
    return rep;
}

namespace {

std::string num(double x)
{
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

} // namespace

void write_convergence_csv(std::ostream& os, const ConvergenceReport& report, bool timing)
{
    const std::string scheme = std::string(to_string(report.scheme));
    const std::string gamma  = num(report.manufactured.gamma);
    const std::string k      = std::to_string(report.manufactured.k);

    os << "scheme,gamma,k,N,h,dt,steps,error_fro,rate,avg_inner_iters,wall_time_s\n";
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
        const CaseResult& e = report.entries[i];
        os << scheme << ',' << gamma << ',' << k << ',' << e.n << ',' << num(e.h) << ',' << num(e.dt) << ','
           << e.steps << ',' << num(e.error) << ',';
        if (i > 0) {
            os << num(report.rates[i - 1]);
        }
        os << ',' << num(e.mean_inner_iters) << ',';
        if (timing) {
            os << num(e.wall_time_s);
        }
        os << '\n';
    }
    os << "AVERAGE,,,,,,,,";
    if (report.average) {
        os << num(*report.average);
    }
    os << ",,\n";
}

} // namespace adiwave
