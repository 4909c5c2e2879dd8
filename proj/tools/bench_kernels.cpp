// Times the serial modular matmul kernel against the OpenMP one on square
// problems of growing size and prints a speedup table.  Results are checked
// against each other, so this doubles as a stress test of the parallel path.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "corat/matmul.hpp"

using corat::matmul_mod_omp;
using corat::matmul_mod_serial;

namespace {

double seconds(void (*kernel)(const std::int64_t*, const std::int64_t*, std::int64_t*, int, int,
                              int, std::int64_t),
               const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
               std::vector<std::int64_t>& out, int n, std::int64_t mod, int reps) {
  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) kernel(a.data(), b.data(), out.data(), n, n, n, mod);
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  int max_n = argc > 1 ? std::atoi(argv[1]) : 768;
  const std::int64_t mod = 1'000'003;
  std::mt19937_64 rng(12345);

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%6s %12s %12s %9s\n", "n", "serial[s]", "openmp[s]", "speedup");
  for (int n = 96; n <= max_n; n *= 2) {
    std::vector<std::int64_t> a(static_cast<size_t>(n) * n), b(a.size()), c1(a.size()),
        c2(a.size());
    for (auto& x : a) x = static_cast<std::int64_t>(rng() % mod);
    for (auto& x : b) x = static_cast<std::int64_t>(rng() % mod);
    int reps = n <= 200 ? 5 : 2;
    double ts = seconds(matmul_mod_serial, a, b, c1, n, mod, reps);
    double tp = seconds(matmul_mod_omp, a, b, c2, n, mod, reps);
    if (c1 != c2) {
      std::fprintf(stderr, "n=%d: kernels disagree\n", n);
      return 1;
    }
    std::printf("%6d %12.4f %12.4f %8.2fx\n", n, ts, tp, ts / tp);
  }
  return 0;
}
