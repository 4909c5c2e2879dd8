#include "corat/matmul.hpp"

namespace corat {

void matmul_mod_serial(const std::int64_t* a, const std::int64_t* b,
                       std::int64_t* out, int n, int k, int m, std::int64_t mod) {
  for (int i = 0; i < n; ++i) {
    std::int64_t* ci = out + static_cast<std::size_t>(i) * m;
    for (int j = 0; j < m; ++j) ci[j] = 0;
    const std::int64_t* ai = a + static_cast<std::size_t>(i) * k;
    for (int p = 0; p < k; ++p) {
      std::int64_t aip = ai[p];
      if (aip == 0) continue;
      const std::int64_t* bp = b + static_cast<std::size_t>(p) * m;
      for (int j = 0; j < m; ++j) ci[j] = (ci[j] + aip * bp[j]) % mod;
    }
  }
}

void matmul_mod_omp(const std::int64_t* a, const std::int64_t* b,
                    std::int64_t* out, int n, int k, int m, std::int64_t mod) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    std::int64_t* ci = out + static_cast<std::size_t>(i) * m;
    for (int j = 0; j < m; ++j) ci[j] = 0;
    const std::int64_t* ai = a + static_cast<std::size_t>(i) * k;
    for (int p = 0; p < k; ++p) {
      std::int64_t aip = ai[p];
      if (aip == 0) continue;
      const std::int64_t* bp = b + static_cast<std::size_t>(p) * m;
      for (int j = 0; j < m; ++j) ci[j] = (ci[j] + aip * bp[j]) % mod;
    }
  }
#else
  matmul_mod_serial(a, b, out, n, k, m, mod);
#endif
}

void matmul_mod(const std::int64_t* a, const std::int64_t* b,
                std::int64_t* out, int n, int k, int m, std::int64_t mod) {
  if (static_cast<long long>(n) * k * m >= 131072)
    matmul_mod_omp(a, b, out, n, k, m, mod);
  else
    matmul_mod_serial(a, b, out, n, k, m, mod);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    fn(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

} // namespace corat
