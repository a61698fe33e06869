#include "adiwave/bench.hpp"

#include "adiwave/error.hpp"
#include "adiwave/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <sstream>
#include <string>

namespace adiwave {

BenchRecord run_benchmark(Scheme scheme, const ManufacturedCase& c, std::size_t n, int workers, std::size_t steps,
                          const AdiConfig& cfg)
{
    if (steps < 1) {
        throw ConfigError("benchmark needs at least one step");
    }
    if (workers < 1) {
        throw ConfigError("workers must be at least 1");
    }
    Simulation sim(scheme, n, c, cfg, Exec{workers});
    sim.step(sim.nominal_dt());

    const auto start = std::chrono::steady_clock::now();
    sim.advance(steps);
    const auto stop = std::chrono::steady_clock::now();

    BenchRecord r;
    r.scheme      = scheme;
    r.n           = n;
    r.workers     = workers;
    r.steps       = steps;
    r.wall_time_s = std::max(std::chrono::duration<double>(stop - start).count(), 1e-9);
    r.final_u     = sim.state().u;
    return r;
}

std::vector<BenchRecord> run_benchmark_series(Scheme scheme, const ManufacturedCase& c, std::size_t n,
                                              std::span<const int> workers, std::size_t steps, const AdiConfig& cfg)
{
    if (workers.empty()) {
        throw ConfigError("no worker counts given");
    }
    std::vector<BenchRecord> out;
    for (int w : workers) {
        out.push_back(run_benchmark(scheme, c, n, w, steps, cfg));
    }
    const auto  it = std::find_if(out.begin(), out.end(), [](const BenchRecord& r) { return r.workers == 1; });
    BenchRecord base = it != out.end() ? *it : run_benchmark(scheme, c, n, 1, steps, cfg);

    const double scale = std::max(frobenius_norm(base.final_u), 1e-300);
    for (auto& r : out) {
        r.speedup   = r.workers == 1 ? 1.0 : base.wall_time_s / r.wall_time_s;
        r.deviation = frobenius_distance(r.final_u, base.final_u) / scale;
    }
    return out;
}

void write_bench_csv(std::ostream& os, std::span<const BenchRecord> records, bool timing)
{
    os << "scheme,N,workers,steps,wall_time_s,speedup\n";
    for (const auto& r : records) {
        os << to_string(r.scheme) << ',' << r.n << ',' << r.workers << ',' << r.steps << ',';
        if (timing) {
            std::ostringstream t;
            t.precision(6);
            t << r.wall_time_s << ',' << r.speedup;
            os << t.str();
        } else {
            os << ',';
        }
        os << '\n';
    }
}

} // namespace adiwave
