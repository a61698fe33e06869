#pragma once

namespace adiwave {

/// Execution policy handed to every data-parallel kernel.
///
/// Kernels split work over independent rows or columns only, so the
/// numerical result never depends on `workers`.
struct Exec
{
    int workers = 1;

    [[nodiscard]] bool parallel() const { return workers > 1; }
};

/// Number of hardware threads OpenMP would use by default (1 without OpenMP).
int hardware_workers();

} // namespace adiwave
