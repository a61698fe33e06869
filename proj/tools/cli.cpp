#include "cli.hpp"

#include "adiwave/bench.hpp"
#include "adiwave/convergence.hpp"
#include "adiwave/error.hpp"
#include "adiwave/simulation.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace adiwave::cli {

namespace {

struct RunConfig
{
    std::string              scheme = "cfd";
    std::vector<std::size_t> n;
    std::optional<double>    cfl;
    double                   gamma   = 0.0;
    int                      k       = 1;
    double                   lambda  = 0.25;
    double                   period  = 0.70710678118654752440;
    double                   periods = 5.0;
    double                   kappa   = 1.0;
    double                   rho     = 1.0;
    double                   eps     = 1e-9;
    int                      k_max   = 8;
    int                      min_check = 6;
    std::string              coupling  = "seidel";
    std::vector<int>         workers;
    std::size_t              steps = 10;
    std::string              output;
    std::string              snapshot;
    bool                     no_timing = false;
    std::string              norm      = "l2";
};

ErrorNorm parse_norm(const std::string& s)
{
    return s == "fro" ? ErrorNorm::frobenius : ErrorNorm::discrete_l2;
}

Scheme parse_scheme(const std::string& s)
{
    return s == "cfd" ? Scheme::nodal : Scheme::staggered;
}

ManufacturedCase make_case(const RunConfig& rc)
{
    ManufacturedCase c;
    c.gamma  = rc.gamma;
    c.k      = rc.k;
    c.lambda = rc.lambda;
    c.period = rc.period;
    c.kappa  = rc.kappa;
    c.rho    = rc.rho;
    c.validate();
    return c;
}

AdiConfig make_config(const RunConfig& rc)
{
    AdiConfig cfg = parse_scheme(rc.scheme) == Scheme::nodal ? default_cfd_config() : default_mfd_config();
    if (rc.cfl) {
        cfg.cfl = *rc.cfl;
    }
    cfg.eps                    = rc.eps;
    cfg.k_max                  = rc.k_max;
    cfg.min_iters_before_check = rc.min_check;
    cfg.coupling               = rc.coupling == "jacobi" ? Coupling::jacobi : Coupling::seidel;
    cfg.validate();
    return cfg;
}

int default_workers()
{
    if (const char* env = std::getenv("ADIWAVE_WORKERS")) {
        char*      end = nullptr;
        const long v   = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1 || v > 4096) {
            throw ConfigError(std::string("ADIWAVE_WORKERS must be a positive integer, got '") + env + "'");
        }
        return static_cast<int>(v);
    }
    return 1;
}

void check_grids(const std::vector<std::size_t>& ns)
{
    for (std::size_t n : ns) {
        if (n < kMinCells) {
            throw ConfigError("N must be at least " + std::to_string(kMinCells));
        }
    }
}

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

void run_simulate(const RunConfig& rc, std::ostream& out)
{
    if (rc.n.size() != 1) {
        throw ConfigError("simulate takes exactly one --n");
    }
    check_grids(rc.n);
    const ManufacturedCase c   = make_case(rc);
    const AdiConfig        cfg = make_config(rc);
    if (!(rc.periods > 0.0)) {
        throw ConfigError("--periods must be positive");
    }
    const int workers = rc.workers.empty() ? default_workers() : rc.workers.front();
    if (rc.workers.size() > 1) {
        throw ConfigError("simulate takes one --workers value");
    }

    Simulation     sim(parse_scheme(rc.scheme), rc.n.front(), c, cfg, Exec{workers});
    const RunStats stats = sim.run_until(rc.periods * c.period);

    out << "scheme,gamma,k,N,dt,steps,time,error_fro,avg_inner_iters,max_inner_iters\n"
        << rc.scheme << ',' << fmt(c.gamma) << ',' << c.k << ',' << rc.n.front() << ',' << fmt(sim.nominal_dt())
        << ',' << stats.steps << ',' << fmt(sim.state().time) << ',' << fmt(sim.pressure_error(parse_norm(rc.norm))) << ','
        << fmt(stats.mean_inner_iters()) << ',' << stats.max_inner_iters << '\n';

    if (!rc.snapshot.empty()) {
        std::ofstream f(rc.snapshot);
        if (!f) {
            throw ConfigError("cannot open snapshot file " + rc.snapshot);
        }
        write_snapshot_csv(f, sim.state());
    }
}

void run_converge(const RunConfig& rc, std::ostream& out)
{
    std::vector<std::size_t> ladder = rc.n;
    if (ladder.empty()) {
        ladder.assign(std::begin(kDefaultLadder), std::end(kDefaultLadder));
    }
    check_grids(ladder);
    const ManufacturedCase c   = make_case(rc);
    const AdiConfig        cfg = make_config(rc);
    if (!(rc.periods > 0.0)) {
        throw ConfigError("--periods must be positive");
    }
    if (rc.workers.size() > 1) {
        throw ConfigError("converge takes one --workers value");
    }
    const int workers = rc.workers.empty() ? default_workers() : rc.workers.front();

    const ConvergenceReport rep = run_convergence(parse_scheme(rc.scheme), c, ladder, cfg, rc.periods, Exec{workers},
                                                  parse_norm(rc.norm));
    write_convergence_csv(out, rep, !rc.no_timing);
}

void run_bench(const RunConfig& rc, std::ostream& out)
{
    if (rc.n.size() != 1) {
        throw ConfigError("bench takes exactly one --n");
    }
    check_grids(rc.n);
    const ManufacturedCase c   = make_case(rc);
    const AdiConfig        cfg = make_config(rc);
    if (rc.steps < 1) {
        throw ConfigError("--steps must be at least 1");
    }
    std::vector<int> workers = rc.workers;
    if (workers.empty()) {
        workers = {1};
        if (const int w = default_workers(); w != 1) {
            workers.push_back(w);
        }
    }
    const auto records = run_benchmark_series(parse_scheme(rc.scheme), c, rc.n.front(), workers, rc.steps, cfg);
    write_bench_csv(out, records, !rc.no_timing);
}

void add_common(CLI::App* sub, RunConfig& rc)
{
    sub->add_option("--scheme", rc.scheme, "cfd (nodal compact) or mfd (staggered mimetic)")
        ->check(CLI::IsMember({"cfd", "mfd"}));
    sub->add_option("--n", rc.n, "Cells per side; comma separated list for converge")->delimiter(',');
    sub->add_option("--cfl", rc.cfl, "Courant number (default 0.91 cfd, 0.81 mfd)");
    sub->add_option("--gamma", rc.gamma, "Polynomial amplitude of the exact solution");
    sub->add_option("--k", rc.k, "Polynomial exponent");
    sub->add_option("--lambda", rc.lambda, "Spatial period");
    sub->add_option("--period", rc.period, "Temporal period T");
    sub->add_option("--kappa", rc.kappa, "Bulk modulus");
    sub->add_option("--rho", rc.rho, "Density");
    sub->add_option("--eps", rc.eps, "Relative fixed-point tolerance");
    sub->add_option("--k-max", rc.k_max, "Maximum inner iterations per stage");
    sub->add_option("--min-check", rc.min_check, "Iterations before the stopping test is evaluated");
    sub->add_option("--coupling", rc.coupling, "seidel or jacobi")->check(CLI::IsMember({"seidel", "jacobi"}));
    sub->add_option("--workers", rc.workers, "Worker threads (list for bench); default $ADIWAVE_WORKERS or 1")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    sub->add_option("--output", rc.output, "Write CSV here instead of stdout");
}

} // namespace

int parse_and_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Fourth-order ADI solvers for the 2-D acoustic wave equation", "adiwave"};
    app.require_subcommand(1);

    RunConfig rc;
    auto*     simulate = app.add_subcommand("simulate", "Run one manufactured-solution case and report its error");
    auto*     converge = app.add_subcommand("converge", "Grid convergence study");
    auto*     bench    = app.add_subcommand("bench", "Time the step loop for several worker counts");
    for (auto* sub : {simulate, converge, bench}) {
        add_common(sub, rc);
    }
    simulate->add_option("--periods", rc.periods, "Simulated time in periods T");
    simulate->add_option("--snapshot", rc.snapshot, "Write the final pressure field to this file");
    converge->add_option("--periods", rc.periods, "Simulated time in periods T");
    for (auto* sub : {simulate, converge}) {
        sub->add_option("--norm", rc.norm, "Error norm: l2 (h * Frobenius, default) or fro")
            ->check(CLI::IsMember({"l2", "fro"}));
    }
    converge->add_flag("--no-timing", rc.no_timing, "Leave wall_time_s empty");
    bench->add_option("--steps", rc.steps, "Timed steps");
    bench->add_flag("--no-timing", rc.no_timing, "Leave timing columns empty");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return ok;
        }
        err << "usage error: " << e.what() << '\n';
        return usage_error;
    }

    try {
        std::ofstream file;
        std::ostream* dest = &out;
        if (!rc.output.empty()) {
            file.open(rc.output);
            if (!file) {
                throw ConfigError("cannot open output file " + rc.output);
            }
            dest = &file;
        }
        if (simulate->parsed()) {
            run_simulate(rc, *dest);
        } else if (converge->parsed()) {
            run_converge(rc, *dest);
        } else {
            run_bench(rc, *dest);
        }
        dest->flush();
    } catch (const NonFinite& e) {
        err << "diverged: " << e.what() << '\n';
        return diverged;
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
    return ok;
}

} // namespace adiwave::cli
