#include "charsums/arith.hpp"

#include <algorithm>
#include <string>

#include "charsums/error.hpp"

namespace charsums {

PrimeTable::PrimeTable(u64 limit) : limit_(limit) {
  if (limit < 2) {
    throw DomainError("sieve: limit must be >= 2, got " + std::to_string(limit));
  }
  // Linear sieve: every composite is crossed out exactly once by its least prime.
  spf_.assign(limit + 1, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<u32>(i);
      primes_.push_back(static_cast<u32>(i));
    }
    for (u32 p : primes_) {
      if (p > spf_[i] || i * p > limit) break;
      spf_[i * p] = p;
    }
  }
}

u64 PrimeTable::largest_factor(u64 n) const {
  u64 largest = 1;
  while (n > 1) {
    u64 p = spf_[n];
    largest = std::max(largest, p);
    n /= p;
  }
  return largest;
}

std::vector<std::pair<u64, int>> PrimeTable::factor(u64 n) const {
  std::vector<std::pair<u64, int>> out;
  while (n > 1) {
    u64 p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

PrimeTable sieve(u64 limit) { return PrimeTable(limit); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

u64 least_prime_factor(u64 n) {
  if (n < 2) throw DomainError("least_prime_factor: n must be >= 2");
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) return p;
  }
  return n;
}

bool is_squarefree(u64 n) {
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    if (n % p == 0) n /= p;
  }
  return n != 0;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> small, large;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

u64 pow_mod(u64 base, u64 exp, u64 mod) {
  unsigned __int128 result = 1 % mod;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<u64>(result);
}

u64 primitive_root(u64 q) {
  if (!is_prime(q)) {
    throw DomainError("primitive_root: modulus " + std::to_string(q) + " is not prime");
  }
  if (q == 2) return 1;
  const auto factors = distinct_prime_factors(q - 1);
  for (u64 g = 2; g < q; ++g) {
    bool generator = std::all_of(factors.begin(), factors.end(), [&](u64 p) {
      return pow_mod(g, (q - 1) / p, q) != 1;
    });
    if (generator) return g;
  }
  throw DomainError("primitive_root: no generator found");  // unreachable for prime q
}

DlogTable::DlogTable(u64 q, u64 cap) : q_(q) {
  if (q > cap) {
    throw ResourceError("dlog_table: modulus " + std::to_string(q) +
                        " exceeds table cap " + std::to_string(cap));
  }
  g_ = primitive_root(q);
  ind_.assign(q, 0);
  u64 power = 1;
  for (u64 k = 0; k + 1 < q; ++k) {
    ind_[power] = static_cast<u32>(k);
    power = power * g_ % q;
  }
}

DlogTable dlog_table(u64 q, u64 cap) { return DlogTable(q, cap); }

u64 friable_count(const PrimeTable& table, u64 x, u64 y) {
  if (x < 1 || y < 2) throw DomainError("friable_count: need x >= 1 and y >= 2");
  if (y >= x) return x;
  if (x > table.limit()) {
    throw RangeError("friable_count: x exceeds prime table limit");
  }
  u64 count = 1;  // n = 1
  for (u64 n = 2; n <= x; ++n) {
    if (table.largest_factor(n) <= y) ++count;
  }
  return count;
}

u64 friable_count(u64 x, u64 y) {
  if (x < 1 || y < 2) throw DomainError("friable_count: need x >= 1 and y >= 2");
  if (y >= x) return x;
  return friable_count(PrimeTable(std::max<u64>(x, 2)), x, y);
}

double prime_harmonic_sum(const PrimeTable& table, u64 x,
                          const std::function<bool(u64)>& filter) {
  if (x > table.limit()) {
    throw RangeError("prime_harmonic_sum: x exceeds prime table limit");
  }
  double sum = 0.0;
  for (u32 p : table.primes()) {
    if (p > x) break;
    if (!filter || filter(p)) sum += 1.0 / p;
  }
  return sum;
}

double prime_harmonic_sum(const PrimeTable& table, u64 x) {
  return prime_harmonic_sum(table, x, nullptr);
}

double prime_harmonic_sum(u64 x) {
  if (x < 2) return 0.0;
  return prime_harmonic_sum(PrimeTable(x), x);
}

}  // namespace charsums
