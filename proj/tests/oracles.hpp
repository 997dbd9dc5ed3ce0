#pragma once

// Slow, direct reference implementations used to cross-check the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline std::vector<bool> eratosthenes(u64 limit) {
  std::vector<bool> prime(limit + 1, true);
  prime[0] = false;
  if (limit >= 1) prime[1] = false;
  for (u64 p = 2; p * p <= limit; ++p) {
    if (!prime[p]) continue;
    for (u64 m = p * p; m <= limit; m += p) prime[m] = false;
  }
  return prime;
}

inline std::vector<u64> factor(u64 n) {
  std::vector<u64> out;
  for (u64 p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline u64 largest_prime(u64 n) { return n == 1 ? 1 : factor(n).back(); }

inline u64 psi(u64 x, u64 y) {
  u64 c = 0;
  for (u64 n = 1; n <= x; ++n) c += largest_prime(n) <= y;
  return c;
}

/// Multiplicative order of g mod q by repeated multiplication.
inline u64 order(u64 g, u64 q) {
  u64 k = 1, v = g % q;
  while (v != 1) {
    v = v * g % q;
    ++k;
  }
  return k;
}

inline u64 smallest_generator(u64 q) {
  for (u64 g = 2; g < q; ++g) {
    if (order(g, q) == q - 1) return g;
  }
  return 1;
}

/// Exponent table of chi_q^{ell (q-1)/d}: entry n is the exponent j in Z/dZ,
/// -1 at n = 0. Built by walking powers of the generator.
inline std::vector<int> character_exponents(u64 q, u64 d, u64 ell) {
  std::vector<int> e(q, -1);
  const u64 g = smallest_generator(q);
  const u64 step = (q - 1) / d;
  u64 v = 1;
  for (u64 k = 0; k < q - 1; ++k) {
    e[v] = static_cast<int>((k * ell * step % (q - 1)) / step);
    v = v * g % q;
  }
  return e;
}

inline std::complex<double> root(int j, u64 d) {
  const double a = 2.0 * std::numbers::pi * j / static_cast<double>(d);
  return {std::cos(a), std::sin(a)};
}

inline std::set<u64> sumset(const std::set<u64>& a, const std::set<u64>& b, u64 d) {
  std::set<u64> out;
  for (u64 x : a) {
    for (u64 y : b) out.insert((x + y) % d);
  }
  return out;
}

inline std::set<u64> k_fold(const std::set<u64>& a, u64 k, u64 d) {
  std::set<u64> out = a;
  for (u64 i = 1; i < k; ++i) out = sumset(out, a, d);
  return out;
}

/// Largest (k, l)-set in Z/nZ by enumerating every subset.
inline u64 max_kl_exhaustive(u64 n, u64 k, u64 l) {
  u64 best = 0;
  for (u64 mask = 1; mask < (u64{1} << n); ++mask) {
    std::set<u64> a;
    for (u64 i = 0; i < n; ++i) {
      if ((mask >> i) & 1) a.insert(i);
    }
    if (a.size() <= best) continue;
    const auto ka = k_fold(a, k, n), la = k_fold(a, l, n);
    bool disjoint = true;
    for (u64 v : ka) disjoint = disjoint && !la.count(v);
    if (disjoint) best = a.size();
  }
  return best;
}

/// Independent mt19937 generator for hand-rolled property tests.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(u64 seed) : rng(seed) {}
  u64 uniform(u64 lo, u64 hi) { return std::uniform_int_distribution<u64>(lo, hi)(rng); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  u64 prime(u64 lo, u64 hi) {
    for (;;) {
      u64 n = uniform(lo, hi);
      if (factor(n).size() == 1) return n;
    }
  }
};

}  // namespace oracle
