#include "charsums/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

#include "charsums/error.hpp"

namespace charsums {

namespace {

std::vector<std::complex<double>> unit_roots(u64 d) {
  // Built conjugate-symmetric so that chi^ell and chi^{d-ell} sum to exact
  // conjugates.
  std::vector<std::complex<double>> roots(d);
  for (u64 j = 0; 2 * j <= d; ++j) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d);
    roots[j] = {std::cos(angle), std::sin(angle)};
    if (j != 0 && j != d - j) roots[d - j] = std::conj(roots[j]);
  }
  if (d % 2 == 0) roots[d / 2] = {-1.0, 0.0};
  roots[0] = {1.0, 0.0};
  return roots;
}

// Prefix scan of chi^power over one period.
// Moduli within this distance count as equal; the earliest t wins.
constexpr double kTieTolerance = 1e-9;

MaxSumResult scan_power(const Character& chi, u64 power) {
  const u64 q = chi.q();
  const u64 d = chi.d();
  const u64 p = power % d;
  MaxSumResult best;
  if (p == 0) {
    best.value = static_cast<double>(q - 1);
    best.argmax_t = q - 1;
    return best;
  }
  const auto& exps = chi.exponents();
  const auto& roots = chi.roots();
  std::complex<double> sum{0.0, 0.0};
  best.value = -1.0;
  for (u64 t = 1; t < q; ++t) {
    sum += roots[(p * static_cast<u64>(exps[t])) % d];
    double modulus = std::abs(sum);
    if (modulus > best.value + kTieTolerance) {
      best.value = modulus;
      best.argmax_t = t;
    }
  }
  // t = q adds chi(q) = 0 and cannot beat t = q-1.
  return best;
}

}  // namespace

Character::Character(std::shared_ptr<const DlogTable> dlog, u64 d, u64 ell)
    : dlog_(std::move(dlog)), d_(d) {
  const u64 q = dlog_->q();
  if (d < 2 || (q - 1) % d != 0) {
    throw DomainError("make_character: order " + std::to_string(d) +
                      " must be >= 2 and divide q-1 = " + std::to_string(q - 1));
  }
  if (std::gcd(ell, d) != 1) {
    throw DomainError("make_character: gcd(ell, d) = " + std::to_string(std::gcd(ell, d)) +
                      " != 1");
  }
  ell_ = ell % d;
  exps_.assign(q, kZero);
  for (u64 n = 1; n < q; ++n) {
    exps_[n] = static_cast<std::int32_t>((ell_ * dlog_->ind(n)) % d_);
  }
  roots_ = unit_roots(d_);
}

std::complex<double> Character::value(u64 n) const {
  auto e = exponent(n);
  if (e == kZero) return {0.0, 0.0};
  return roots_[static_cast<std::size_t>(e)];
}

Character make_character(std::shared_ptr<const DlogTable> dlog, u64 d, u64 ell) {
  return Character(std::move(dlog), d, ell);
}

Character make_character(u64 q, u64 d, u64 ell) {
  return Character(std::make_shared<const DlogTable>(q), d, ell);
}

std::int32_t eval_exponent(const Character& chi, u64 n) { return chi.exponent(n); }

std::complex<double> power_partial_sum(const Character& chi, u64 power, u64 x) {
  const u64 q = chi.q();
  const u64 d = chi.d();
  const u64 p = power % d;
  const auto& exps = chi.exponents();
  const auto& roots = chi.roots();
  std::complex<double> sum{0.0, 0.0};
  for (u64 n = 1; n <= x; ++n) {
    auto e = exps[n % q];
    if (e == kZero) continue;
    sum += roots[(p * static_cast<u64>(e)) % d];
  }
  return sum;
}

std::complex<double> partial_sum(const Character& chi, u64 x) {
  return power_partial_sum(chi, 1, x);
}

MaxSumResult max_partial_sum(const Character& chi) { return scan_power(chi, 1); }

MaxSumResult max_partial_sum_power(const Character& chi, u64 power) {
  return scan_power(chi, power);
}

u64 least_nonone(const Character& chi) {
  for (u64 n = 2; n < chi.q(); ++n) {
    auto e = chi.exponent(n);
    if (e != kZero && e != 0) return n;
  }
  throw DomainError("least_nonone: character is principal");
}

double arg_of_exponent(std::int64_t j, u64 d) {
  auto dd = static_cast<std::int64_t>(d);
  j %= dd;
  if (j < 0) j += dd;
  if (2 * j > dd) j -= dd;
  return static_cast<double>(j) / static_cast<double>(d);
}

namespace {

std::vector<u64> fiber_sizes(const Character& chi) {
  std::vector<u64> fibers(chi.d(), 0);
  const auto& exps = chi.exponents();
  for (u64 n = 1; n < chi.q(); ++n) ++fibers[static_cast<std::size_t>(exps[n])];
  return fibers;
}

}  // namespace

u64 arg_interval_count(const Character& chi, const ArgInterval& interval) {
  const auto fibers = fiber_sizes(chi);
  u64 count = 0;
  for (u64 j = 0; j < chi.d(); ++j) {
    if (interval.contains(arg_of_exponent(static_cast<std::int64_t>(j), chi.d()))) {
      count += fibers[j];
    }
  }
  return count;
}

double arg_interval_discrepancy(const Character& chi, const ArgInterval& interval) {
  double count = static_cast<double>(arg_interval_count(chi, interval));
  return std::abs(count - static_cast<double>(chi.q()) * interval.length());
}

DiscrepancyReport erdos_turan_discrepancy_check(const Character& chi, u64 K, double constant,
                                                std::size_t max_endpoints) {
  if (K < 1) throw DomainError("erdos_turan_discrepancy_check: K must be >= 1");
  const u64 d = chi.d();
  const double q = static_cast<double>(chi.q());
  const auto fibers = fiber_sizes(chi);

  // Atoms sorted by position with prefix weights.
  std::vector<std::pair<double, u64>> atoms;
  atoms.reserve(d);
  for (u64 j = 0; j < d; ++j) {
    atoms.emplace_back(arg_of_exponent(static_cast<std::int64_t>(j), d), fibers[j]);
  }
  std::sort(atoms.begin(), atoms.end());
  std::vector<double> pos(d);
  std::vector<u64> prefix(d + 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    pos[i] = atoms[i].first;
    prefix[i + 1] = prefix[i] + atoms[i].second;
  }
  auto weight_in = [&](double lo, bool lo_closed, double hi, bool hi_closed) -> u64 {
    auto first = lo_closed ? std::lower_bound(pos.begin(), pos.end(), lo)
                           : std::upper_bound(pos.begin(), pos.end(), lo);
    auto last = hi_closed ? std::upper_bound(pos.begin(), pos.end(), hi)
                          : std::lower_bound(pos.begin(), pos.end(), hi);
    if (last <= first) return 0;
    return prefix[static_cast<std::size_t>(last - pos.begin())] -
           prefix[static_cast<std::size_t>(first - pos.begin())];
  };

  DiscrepancyReport report;
  report.K = K;
  report.constant = constant;
  std::vector<double> endpoints{-0.5};
  std::size_t stride = 1;
  if (d > max_endpoints) {
    stride = (d + max_endpoints - 1) / max_endpoints;
    report.exhaustive = false;
  }
  for (std::size_t i = 0; i < d; i += stride) endpoints.push_back(pos[i]);
  endpoints.push_back(0.5);
  std::sort(endpoints.begin(), endpoints.end());
  endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());

  for (std::size_t a = 0; a < endpoints.size(); ++a) {
    for (std::size_t b = a; b < endpoints.size(); ++b) {
      const double lo = endpoints[a];
      const double hi = endpoints[b];
      const double len = hi - lo;
      // Closed ends (the left end stays open at -1/2, outside the domain).
      ArgInterval closed{lo, hi, lo > -0.5, true};
      double dev_closed = std::abs(
          static_cast<double>(weight_in(lo, closed.lo_closed, hi, true)) - q * len);
      ArgInterval open{lo, hi, false, false};
      double dev_open =
          std::abs(q * len - static_cast<double>(weight_in(lo, false, hi, false)));
      report.intervals_swept += 2;
      if (dev_closed > report.max_discrepancy) {
        report.max_discrepancy = dev_closed;
        report.worst = closed;
      }
      if (dev_open > report.max_discrepancy) {
        report.max_discrepancy = dev_open;
        report.worst = open;
      }
    }
  }
  const double Kd = static_cast<double>(K);
  const double dd = static_cast<double>(d);
  const double divisible = std::floor(Kd / dd);
  report.bound = constant * q * (1.0 / Kd + std::log(1.0 + divisible) / dd);
  return report;
}

u64 count_S_delta(u64 q, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("count_S_delta: delta must lie in (0, 1)");
  }
  if (q < 2) throw DomainError("count_S_delta: q must be >= 2");
  const double lq = std::log(static_cast<double>(q));
  const double small = std::exp(delta / 10.0 * lq);  // q^{delta/10}
  const double large = std::exp(delta * lq);         // q^delta
  PrimeTable table(std::max<u64>(q, 2));
  u64 count = 0;
  for (u64 n = 1; n < q; ++n) {
    u64 m = 1;
    bool ok = true;
    for (auto [p, e] : table.factor(n)) {
      double pd = static_cast<double>(p);
      if (pd <= small) {
        for (int i = 0; i < e; ++i) m *= p;
      } else if (pd > large) {
        ok = false;
        break;
      }
    }
    if (ok && static_cast<double>(m) <= small) ++count;
  }
  return count;
}

IndexSet::IndexSet(u64 d, std::vector<bool> members, bool require_symmetric)
    : d_(d), members_(std::move(members)) {
  members_.resize(d, false);
  if (d > 0) members_[0] = false;
  if (require_symmetric && !is_symmetric()) {
    throw DomainError("IndexSet: membership is not symmetric under ell -> d - ell");
  }
}

std::size_t IndexSet::size() const {
  return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true));
}

std::vector<u64> IndexSet::elements() const {
  std::vector<u64> out;
  for (u64 ell = 1; ell < d_; ++ell) {
    if (members_[ell]) out.push_back(ell);
  }
  return out;
}

bool IndexSet::is_symmetric() const {
  for (u64 ell = 1; ell < d_; ++ell) {
    if (members_[ell] != members_[d_ - ell]) return false;
  }
  return true;
}

std::vector<double> max_sums_over_powers(const Character& chi, unsigned threads) {
  const u64 d = chi.d();
  std::vector<double> sums(d - 1, 0.0);
  auto work = [&](u64 begin, u64 end) {
    for (u64 ell = begin; ell < end; ++ell) sums[ell - 1] = scan_power(chi, ell).value;
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(d - 1)));
  if (threads == 1) {
    work(1, d);
    return sums;
  }
  std::vector<std::thread> pool;
  const u64 total = d - 1;
  for (unsigned t = 0; t < threads; ++t) {
    u64 begin = 1 + total * t / threads;
    u64 end = 1 + total * (t + 1) / threads;
    pool.emplace_back(work, begin, end);
  }
  for (auto& th : pool) th.join();
  return sums;
}

IndexSet xi_set_from_sums(const Character& chi, const std::vector<double>& sums,
                          double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("xi_set: epsilon must be positive");
  const double q = static_cast<double>(chi.q());
  const double threshold = epsilon * std::sqrt(q) * std::log(q);
  std::vector<bool> members(chi.d(), false);
  for (u64 ell = 1; ell < chi.d(); ++ell) members[ell] = sums[ell - 1] > threshold;
  return IndexSet(chi.d(), std::move(members), true);
}

IndexSet xi_set(const Character& chi, double epsilon) {
  return xi_set_from_sums(chi, max_sums_over_powers(chi), epsilon);
}

double avg_max_sum_over_powers(const Character& chi) {
  const auto sums = max_sums_over_powers(chi);
  double total = 0.0;
  for (double m : sums) total += m;
  return total / static_cast<double>(chi.d());
}

}  // namespace charsums
