#pragma once

// Completely multiplicative functions f: N -> mu_d ∪ {0}, tabulated on [1, x],
// and the statistics built on them: level sets, mean squares over powers,
// prime sums sigma_j, pretentious distances and Turán–Kubilius ingredients.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "charsums/arith.hpp"
#include "charsums/characters.hpp"

namespace charsums {

class MultFun {
 public:
  /// `exps` is indexed by n in [0, x_max]; entry 0 is ignored. Validates
  /// exps[1] = 0 and complete multiplicativity on prime factorisations.
  MultFun(u64 d, std::vector<std::int32_t> exps, std::shared_ptr<const PrimeTable> primes);

  u64 d() const { return d_; }
  u64 x_max() const { return exps_.size() - 1; }
  std::int32_t exponent(u64 n) const { return exps_[n]; }
  std::span<const std::int32_t> exponents() const { return exps_; }
  const std::vector<u64>& zero_primes() const { return zero_primes_; }
  const PrimeTable& primes() const { return *primes_; }
  std::shared_ptr<const PrimeTable> primes_ptr() const { return primes_; }

  /// Re(f(n) conj(g(n))) style evaluation helper: the complex value f(n).
  std::complex<double> value(u64 n) const;

 private:
  u64 d_;
  std::vector<std::int32_t> exps_;
  std::shared_ptr<const PrimeTable> primes_;
  std::vector<u64> zero_primes_;
};

MultFun from_character(const Character& chi, u64 x);

/// Independent uniform exponents (or kZero with probability zero_rate) on the
/// primes p <= x0, extended by complete multiplicativity. Draws come from
/// std::mt19937_64 in ascending prime order, so a seed fixes the table on
/// every platform.
MultFun random_member(u64 x0, u64 d, u64 seed, double zero_rate);

/// Builds f from its values on primes: `prime_exponent(p)` returns an
/// exponent in [0, d) or kZero.
template <class PrimeRule>
MultFun multfun_from_primes(u64 x, u64 d, PrimeRule&& prime_exponent);

struct LevelSetHistogram {
  u64 d = 1;
  u64 x = 0;
  std::vector<u64> counts;  // counts[j] = |{n <= x : f(n) = e(j/d)}|
  u64 zeros = 0;

  u64 total() const;
  u64 max_fiber() const;
  /// Fibers sorted in non-increasing order.
  std::vector<u64> sorted_fibers() const;
};

LevelSetHistogram level_histogram(const MultFun& f, u64 x);

struct WeakEquidistReport {
  bool holds = false;
  double ratio = 0.0;  // max fiber / (C x c_f(x) / d)
  u64 max_fiber = 0;
  double c_f = 1.0;    // prod_{p <= x, f(p) = 0} (1 - 1/p)
  double bound = 0.0;
};

WeakEquidistReport check_weak_equidistribution(const MultFun& f, u64 x,
                                               double constant = 100.0);

enum class MeanSquareMode { direct, histogram };

inline constexpr u64 kDirectModeBudget = u64{2} << 30;  // d * x

/// (1/d) Sum_{0<=ell<d} |Sum_{n<=x} f^ell(n)|^2.
double mean_square_powers(const MultFun& f, u64 x, MeanSquareMode mode,
                          u64 budget = kDirectModeBudget);

/// |{(n, m) : n, m <= x, f(n) = f(m) != 0}| = Sum_j counts[j]^2, exactly.
u64 collision_count(const LevelSetHistogram& hist);

struct SigmaVector {
  u64 d = 1;
  u64 x = 0;
  std::vector<double> sigma;  // sigma[j] = Sum_{p<=x, f(p)=e(j/d)} 1/p
  double zero_sum = 0.0;      // Sum_{p<=x, f(p)=0} 1/p

  /// E_{!=0,1}(x) = Sum_{j != 0} sigma[j].
  double nonunit_sum() const;
  double total() const;
};

SigmaVector sigma_vector(const MultFun& f, u64 x);

/// min{P^-(d), 2 + Sum_{p<=x, f(p) != 0,1} 1/p}.
double big_sigma(const MultFun& f, u64 x);

struct DistanceResult {
  double value_squared = 0.0;
  std::optional<double> minimizing_t;
  double value() const;
};

/// D(f, g; x)^2 = Sum_{p<=x} (1 - Re f(p) conj(g(p))) / p; zero values count 1/p.
DistanceResult pretentious_distance(const MultFun& f, const MultFun& g, u64 x);

/// D(f, n^{it}; x)^2 for one t.
double twist_distance_squared(const MultFun& f, u64 x, double t);

/// min over the grid {-T, -T + step, ..., T} of D(f, n^{it}; x)^2, followed by
/// `refine_rounds` rounds of 10x zoom around the best point. Ties go to the
/// smallest t.
DistanceResult distance_to_twist(const MultFun& f, u64 x, double T = 100.0,
                                 double grid_step = 1e-3, int refine_rounds = 3);

/// C ((M + 1) e^{-M} + 1/T + log log x / log x).
double halasz_rhs(double M, double T, double x, double C);

inline constexpr u64 kVarianceBudget = u64{1} << 30;  // d^2

/// (1/d) Sum_{1<=ell<=d} (Sum_{1<=j<d} ||ell j/d||^2 sigma_j - (1/12) Sum_j sigma_j)^2,
/// by the direct double loop.
double variance_delta(const SigmaVector& sigma, u64 budget = kVarianceBudget);

/// Sum over p^k || n with p in S of k. `S` must be sorted ascending.
int omega_S(u64 n, std::span<const u64> S);

struct TuranKubiliusReport {
  double mean = 0.0;           // (1/x) Sum_{n<=x} Omega_{S_j}(n)
  double sigma_j = 0.0;
  double difference = 0.0;     // mean - sigma_j
  double second_moment = 0.0;  // (1/x) Sum_{n<=x} (Omega_{S_j}(n) - sigma_j)^2
  double prime_power_sum = 0.0;  // Sum_{p^k<=x, p in S_j} p^{-k}
  double bound = 0.0;          // C_TK (sigma_j + 1)
  bool holds = false;
};

TuranKubiliusReport turan_kubilius_check(const MultFun& f, u64 x, std::int32_t j,
                                         double c_tk = 4.0);

struct OrthogonalityReport {
  std::complex<double> lhs;  // Sum_{ell=1}^{d} Sum_{p<=x} chi^ell(p) / p
  double rhs = 0.0;          // d Sum_{p<=x, chi(p)=1} 1/p
  double error = 0.0;        // |lhs - rhs|
};

OrthogonalityReport orthogonality_identity_check(const Character& chi, u64 x);

// ---------------------------------------------------------------------------

template <class PrimeRule>
MultFun multfun_from_primes(u64 x, u64 d, PrimeRule&& prime_exponent) {
  auto table = std::make_shared<const PrimeTable>(std::max<u64>(x, 2));
  std::vector<std::int32_t> exps(x + 1, 0);
  for (u64 n = 2; n <= x; ++n) {
    u64 p = table->smallest_factor(n);
    if (p == n) {
      exps[n] = prime_exponent(n);
      continue;
    }
    auto a = exps[p];
    auto b = exps[n / p];
    exps[n] = (a == kZero || b == kZero)
                  ? kZero
                  : static_cast<std::int32_t>((static_cast<u64>(a) + static_cast<u64>(b)) % d);
  }
  return MultFun(d, std::move(exps), std::move(table));
}

}  // namespace charsums
