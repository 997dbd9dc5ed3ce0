#pragma once

// Arithmetic substrate: sieving, primitive roots, discrete-log tables,
// friable counting and prime harmonic sums.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace charsums {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

/// Primes up to `limit` together with a least-prime-factor table.
class PrimeTable {
 public:
  explicit PrimeTable(u64 limit);

  u64 limit() const { return limit_; }
  std::span<const u32> primes() const { return primes_; }

  /// Least prime factor of n, for 2 <= n <= limit.
  u32 smallest_factor(u64 n) const { return spf_[n]; }
  bool is_prime(u64 n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }

  /// Largest prime factor of n (1 for n = 1), for 1 <= n <= limit.
  u64 largest_factor(u64 n) const;

  /// Prime factorisation of n <= limit as (p, exponent) pairs, ascending p.
  std::vector<std::pair<u64, int>> factor(u64 n) const;

 private:
  u64 limit_;
  std::vector<u32> primes_;
  std::vector<u32> spf_;
};

/// Builds a PrimeTable; throws DomainError for limit < 2.
PrimeTable sieve(u64 limit);

/// Deterministic primality by trial division (adequate for n < 2^40).
bool is_prime(u64 n);

/// Distinct prime factors of n by trial division, ascending.
std::vector<u64> distinct_prime_factors(u64 n);

/// Smallest prime factor of n >= 2 (P^-(n)); returns n itself when n is prime.
u64 least_prime_factor(u64 n);

bool is_squarefree(u64 n);

/// All positive divisors of n, ascending.
std::vector<u64> divisors(u64 n);

u64 pow_mod(u64 base, u64 exp, u64 mod);

/// Smallest g in [2, q-1] generating (Z/qZ)^*. q = 2 returns 1.
u64 primitive_root(u64 q);

inline constexpr u64 kDefaultDlogCap = u64{1} << 31;

/// Discrete logarithms base the smallest primitive root, for every unit mod q.
class DlogTable {
 public:
  DlogTable(u64 q, u64 cap = kDefaultDlogCap);

  u64 q() const { return q_; }
  u64 generator() const { return g_; }
  /// ind(n) for 1 <= n <= q-1.
  u32 ind(u64 n) const { return ind_[n]; }
  std::span<const u32> table() const { return ind_; }

 private:
  u64 q_;
  u64 g_;
  std::vector<u32> ind_;  // ind_[0] unused
};

/// Throws DomainError when q is not prime, ResourceError when q > cap.
DlogTable dlog_table(u64 q, u64 cap = kDefaultDlogCap);

/// Psi(x, y): count of 1 <= n <= x whose largest prime factor is <= y.
u64 friable_count(const PrimeTable& table, u64 x, u64 y);
u64 friable_count(u64 x, u64 y);

/// Sum of 1/p over primes p <= x accepted by `filter`, ascending in p.
double prime_harmonic_sum(const PrimeTable& table, u64 x,
                          const std::function<bool(u64)>& filter);
double prime_harmonic_sum(const PrimeTable& table, u64 x);
double prime_harmonic_sum(u64 x);

}  // namespace charsums
