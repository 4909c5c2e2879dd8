#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace corat {

// C = A * B mod `mod`, with A (n x k), B (k x m), C (n x m), all row-major.
// Entries must be canonical residues in [0, mod); mod must fit in 31 bits so
// the per-step accumulate (acc + a*b) % mod stays inside int64.
void matmul_mod_serial(const std::int64_t* a, const std::int64_t* b,
                       std::int64_t* out, int n, int k, int m, std::int64_t mod);

// Same contract, OpenMP-parallel over output rows. Falls back to the serial
// kernel when built without OpenMP.
void matmul_mod_omp(const std::int64_t* a, const std::int64_t* b,
                    std::int64_t* out, int n, int k, int m, std::int64_t mod);

// Dispatch by problem size.
void matmul_mod(const std::int64_t* a, const std::int64_t* b,
                std::int64_t* out, int n, int k, int m, std::int64_t mod);

// Run fn(i) for i in [0, n). Independent iterations only; OpenMP when available.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace corat
