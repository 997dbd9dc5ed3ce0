#pragma once

// Primitive Dirichlet characters of exact order d modulo a prime q.
//
// A character is held as an exponent map n -> j in Z/dZ with chi(n) = e(j/d),
// so level-set and equality tests are exact integer comparisons. Complex
// values only appear when partial sums are accumulated.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "charsums/arith.hpp"

namespace charsums {

/// Exponent value standing for chi(n) = 0.
inline constexpr std::int32_t kZero = -1;

/// chi = chi_q^{ell (q-1)/d}, where chi_q(g) = e(1/(q-1)) for the smallest
/// primitive root g.
class Character {
 public:
  Character(std::shared_ptr<const DlogTable> dlog, u64 d, u64 ell);

  u64 q() const { return dlog_->q(); }
  u64 d() const { return d_; }
  u64 ell() const { return ell_; }
  const DlogTable& dlog() const { return *dlog_; }
  std::shared_ptr<const DlogTable> dlog_ptr() const { return dlog_; }

  /// j with chi(n) = e(j/d), or kZero when q | n.
  std::int32_t exponent(u64 n) const {
    u64 r = n % q();
    if (r == 0) return kZero;
    return static_cast<std::int32_t>((ell_ * dlog_->ind(r)) % d_);
  }

  std::complex<double> value(u64 n) const;

  /// Exponents for residues 0..q-1 (entry 0 is kZero).
  const std::vector<std::int32_t>& exponents() const { return exps_; }

  /// cos/sin table of e(j/d), j = 0..d-1.
  const std::vector<std::complex<double>>& roots() const { return roots_; }

 private:
  std::shared_ptr<const DlogTable> dlog_;
  u64 d_;
  u64 ell_;
  std::vector<std::int32_t> exps_;
  std::vector<std::complex<double>> roots_;
};

/// Throws DomainError when d does not divide q-1 or gcd(ell, d) != 1.
Character make_character(u64 q, u64 d, u64 ell);
Character make_character(std::shared_ptr<const DlogTable> dlog, u64 d, u64 ell);

std::int32_t eval_exponent(const Character& chi, u64 n);

/// Sum_{n<=x} chi(n), ascending in n.
std::complex<double> partial_sum(const Character& chi, u64 x);

/// Sum_{n<=x} chi^power(n) for any power; d | power gives the principal
/// character (value 1 on units).
std::complex<double> power_partial_sum(const Character& chi, u64 power, u64 x);

struct MaxSumResult {
  double value = 0.0;
  u64 argmax_t = 1;
};

/// max_{1<=t<=q} |Sum_{n<=t} chi(n)|; ties go to the smallest t.
MaxSumResult max_partial_sum(const Character& chi);

/// Same statistic for chi^power, 1 <= power mod d.
MaxSumResult max_partial_sum_power(const Character& chi, u64 power);

/// Least n with chi(n) not in {0, 1}. Always prime.
u64 least_nonone(const Character& chi);

/// Subinterval of (-1/2, 1/2] with independently open or closed ends.
struct ArgInterval {
  double lo = -0.5;
  double hi = 0.5;
  bool lo_closed = false;
  bool hi_closed = true;

  bool contains(double t) const {
    bool above = lo_closed ? t >= lo : t > lo;
    bool below = hi_closed ? t <= hi : t < hi;
    return above && below;
  }
  double length() const { return hi > lo ? hi - lo : 0.0; }
  static ArgInterval full() { return {}; }
  static ArgInterval empty() { return {0.0, 0.0, false, false}; }
};

/// arg(e(j/d)) as the representative of j/d in (-1/2, 1/2].
double arg_of_exponent(std::int64_t j, u64 d);

/// |{1 <= n <= q-1 : arg(chi(n)) in I}|.
u64 arg_interval_count(const Character& chi, const ArgInterval& interval);

struct DiscrepancyReport {
  u64 K = 1;
  double constant = 1.0;
  double max_discrepancy = 0.0;  // sup over swept intervals of |count - q|I||
  ArgInterval worst;
  double bound = 0.0;            // constant * q * (1/K + log(1 + floor(K/d))/d)
  std::size_t intervals_swept = 0;
  bool exhaustive = true;        // false when endpoints were subsampled
  bool holds() const { return max_discrepancy <= bound; }
};

/// |count(I) - q|I|| for a single interval.
double arg_interval_discrepancy(const Character& chi, const ArgInterval& interval);

/// Sweeps intervals with endpoints at the value atoms (both open and closed
/// ends), which realises the exact supremum; endpoints are subsampled when
/// d exceeds `max_endpoints`.
DiscrepancyReport erdos_turan_discrepancy_check(const Character& chi, u64 K,
                                                double constant = 1.0,
                                                std::size_t max_endpoints = 2048);

/// |S_delta|: n < q with n = m k, m <= q^{delta/10} and every prime of k in
/// (q^{delta/10}, q^delta].
u64 count_S_delta(u64 q, double delta);

/// Subset of [1, d-1], optionally required to be closed under l -> d - l.
class IndexSet {
 public:
  IndexSet(u64 d, std::vector<bool> members, bool require_symmetric);

  u64 d() const { return d_; }
  bool contains(u64 ell) const { return ell >= 1 && ell < d_ && members_[ell]; }
  std::size_t size() const;
  std::vector<u64> elements() const;
  bool is_symmetric() const;
  const std::vector<bool>& mask() const { return members_; }

 private:
  u64 d_;
  std::vector<bool> members_;  // index 0 always false
};

/// M(chi^ell) for ell = 1..d-1 (entry ell-1). `threads` > 1 splits the
/// ell range across workers; the result does not depend on it.
std::vector<double> max_sums_over_powers(const Character& chi, unsigned threads = 1);

/// Xi_d(eps) = {1 <= ell <= d-1 : M(chi^ell) > eps sqrt(q) log q}.
IndexSet xi_set(const Character& chi, double epsilon);
IndexSet xi_set_from_sums(const Character& chi, const std::vector<double>& sums,
                          double epsilon);

/// (1/d) Sum_{ell=1}^{d-1} M(chi^ell).
double avg_max_sum_over_powers(const Character& chi);

}  // namespace charsums
