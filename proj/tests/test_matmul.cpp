#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corat/matmul.hpp"

#include <atomic>
#include <random>
#include <vector>

using namespace corat;

namespace {
std::vector<std::int64_t> rand_mat(std::mt19937_64& rng, int r, int c, std::int64_t mod) {
  std::vector<std::int64_t> m(static_cast<size_t>(r) * c);
  for (auto& e : m) e = static_cast<std::int64_t>(rng() % mod);
  return m;
}

// plain reference with wide accumulation, no blocking
std::vector<std::int64_t> naive(const std::vector<std::int64_t>& a,
                                const std::vector<std::int64_t>& b, int n, int k,
                                int m, std::int64_t mod) {
  std::vector<std::int64_t> c(static_cast<size_t>(n) * m, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      __int128 acc = 0;
      for (int t = 0; t < k; ++t)
        acc += static_cast<__int128>(a[static_cast<size_t>(i) * k + t]) * b[static_cast<size_t>(t) * m + j];
      c[static_cast<size_t>(i) * m + j] = static_cast<std::int64_t>(acc % mod);
    }
  return c;
}
} // namespace

TEST_CASE("fixed small product") {
  // [[1,2],[3,4]] * [[5,6],[7,0]] mod 7 = [[19,6],[43,18]] mod 7 = [[5,6],[1,4]]
  std::vector<std::int64_t> a{1, 2, 3, 4}, b{5, 6, 7, 0}, c(4);
  matmul_mod_serial(a.data(), b.data(), c.data(), 2, 2, 2, 7);
  CHECK(c == std::vector<std::int64_t>{5, 6, 1, 4});
  matmul_mod_omp(a.data(), b.data(), c.data(), 2, 2, 2, 7);
  CHECK(c == std::vector<std::int64_t>{5, 6, 1, 4});
}

TEST_CASE("serial and parallel kernels agree with the reference") {
  std::mt19937_64 rng(77001);
  const std::int64_t mods[] = {2, 3, 4, 97, 65536, (1LL << 31) - 1};
  for (std::int64_t mod : mods) {
    for (int trial = 0; trial < 6; ++trial) {
      int n = 1 + static_cast<int>(rng() % 40);
      int k = 1 + static_cast<int>(rng() % 40);
      int m = 1 + static_cast<int>(rng() % 40);
      auto a = rand_mat(rng, n, k, mod), b = rand_mat(rng, k, m, mod);
      auto want = naive(a, b, n, k, m, mod);
      std::vector<std::int64_t> c1(want.size()), c2(want.size()), c3(want.size());
      matmul_mod_serial(a.data(), b.data(), c1.data(), n, k, m, mod);
      matmul_mod_omp(a.data(), b.data(), c2.data(), n, k, m, mod);
      matmul_mod(a.data(), b.data(), c3.data(), n, k, m, mod);
      CHECK(c1 == want);
      CHECK(c2 == want);
      CHECK(c3 == want);
    }
  }
}

TEST_CASE("large product crosses the parallel dispatch threshold") {
  std::mt19937_64 rng(77002);
  const std::int64_t mod = 1048573;
  int n = 128, k = 96, m = 64; // n*k*m well past the dispatch cutoff
  auto a = rand_mat(rng, n, k, mod), b = rand_mat(rng, k, m, mod);
  auto want = naive(a, b, n, k, m, mod);
  std::vector<std::int64_t> c1(want.size()), c2(want.size());
  matmul_mod(a.data(), b.data(), c1.data(), n, k, m, mod);
  matmul_mod_omp(a.data(), b.data(), c2.data(), n, k, m, mod);
  CHECK(c1 == want);
  CHECK(c2 == want);
}

TEST_CASE("results stay canonical residues") {
  std::mt19937_64 rng(77003);
  const std::int64_t mod = (1LL << 31) - 1; // worst case for the accumulator
  int n = 8, k = 200, m = 8;
  auto a = rand_mat(rng, n, k, mod), b = rand_mat(rng, k, m, mod);
  std::vector<std::int64_t> c(static_cast<size_t>(n) * m);
  matmul_mod(a.data(), b.data(), c.data(), n, k, m, mod);
  for (auto e : c) {
    CHECK(e >= 0);
    CHECK(e < mod);
  }
}

TEST_CASE("parallel_for covers every index exactly once") {
  const std::size_t n = 10007;
  std::vector<std::atomic<int>> hits(n);
  for (auto& h : hits) h.store(0);
  parallel_for(n, [&](std::size_t i) { hits[i].fetch_add(1); });
  for (std::size_t i = 0; i < n; ++i) CHECK(hits[i].load() == 1);
  parallel_for(0, [&](std::size_t) { CHECK(false); });
}
