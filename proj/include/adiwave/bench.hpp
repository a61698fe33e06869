#pragma once

#include "adiwave/adi.hpp"
#include "adiwave/fields.hpp"
#include "adiwave/linalg.hpp"
#include "adiwave/manufactured.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace adiwave {

struct BenchRecord
{
    Scheme      scheme      = Scheme::nodal;
    std::size_t n           = 0;
    int         workers     = 1;
    std::size_t steps       = 0;
    double      wall_time_s = 0.0;
    double      speedup     = 1.0; // time(workers = 1) / time(workers)
    // Relative Frobenius distance of the final pressure from the 1-worker run.
    double      deviation   = 0.0;
    DenseMatrix final_u;
};

/// Times `steps` steps after one untimed warm-up step; operator
/// construction is excluded. speedup and deviation are left at their
/// defaults.
BenchRecord run_benchmark(Scheme scheme, const ManufacturedCase& c, std::size_t n, int workers, std::size_t steps,
                          const AdiConfig& cfg);

/// One record per entry of `workers`, with speedup and deviation against a
/// 1-worker run (taken from the list, or run in addition when absent).
std::vector<BenchRecord> run_benchmark_series(Scheme scheme, const ManufacturedCase& c, std::size_t n,
                                              std::span<const int> workers, std::size_t steps, const AdiConfig& cfg);

/// Header `scheme,N,workers,steps,wall_time_s,speedup`. With `timing` false
/// both timing columns are left empty.
void write_bench_csv(std::ostream& os, std::span<const BenchRecord> records, bool timing = true);

} // namespace adiwave
