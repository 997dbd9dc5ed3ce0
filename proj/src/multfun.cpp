#include "charsums/multfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "charsums/error.hpp"

namespace charsums {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double unit_angle(std::int32_t e, u64 d) {
  return kTwoPi * static_cast<double>(e) / static_cast<double>(d);
}

void require_range(const MultFun& f, u64 x, const char* op) {
  if (x > f.x_max()) {
    throw RangeError(std::string(op) + ": x = " + std::to_string(x) +
                     " exceeds tabulation limit " + std::to_string(f.x_max()));
  }
}

}  // namespace

MultFun::MultFun(u64 d, std::vector<std::int32_t> exps, std::shared_ptr<const PrimeTable> primes)
    : d_(d), exps_(std::move(exps)), primes_(std::move(primes)) {
  if (d < 1) throw DomainError("MultFun: d must be >= 1");
  if (exps_.size() < 2) throw DomainError("MultFun: table must cover n = 1");
  if (exps_[1] != 0) throw DomainError("MultFun: f(1) must be 1");
  const u64 x = x_max();
  if (primes_->limit() < x) throw DomainError("MultFun: prime table too short");
  for (u64 n = 2; n <= x; ++n) {
    auto e = exps_[n];
    if (e != kZero && (e < 0 || static_cast<u64>(e) >= d)) {
      throw DomainError("MultFun: exponent out of range at n = " + std::to_string(n));
    }
    u64 p = primes_->smallest_factor(n);
    if (p == n) {
      if (e == kZero) zero_primes_.push_back(p);
      continue;
    }
    auto a = exps_[p];
    auto b = exps_[n / p];
    std::int32_t expected =
        (a == kZero || b == kZero)
            ? kZero
            : static_cast<std::int32_t>((static_cast<u64>(a) + static_cast<u64>(b)) % d);
    if (e != expected) {
      throw DomainError("MultFun: not completely multiplicative at n = " + std::to_string(n));
    }
  }
}

std::complex<double> MultFun::value(u64 n) const {
  auto e = exps_[n];
  if (e == kZero) return {0.0, 0.0};
  return std::polar(1.0, unit_angle(e, d_));
}

MultFun from_character(const Character& chi, u64 x) {
  if (x < 1) throw DomainError("from_character: x must be >= 1");
  auto table = std::make_shared<const PrimeTable>(std::max<u64>(x, 2));
  std::vector<std::int32_t> exps(x + 1, 0);
  for (u64 n = 1; n <= x; ++n) exps[n] = chi.exponent(n);
  return MultFun(chi.d(), std::move(exps), std::move(table));
}

MultFun random_member(u64 x0, u64 d, u64 seed, double zero_rate) {
  if (d < 1) throw DomainError("random_member: d must be >= 1");
  if (!(zero_rate >= 0.0 && zero_rate < 1.0)) {
    throw DomainError("random_member: zero_rate must lie in [0, 1)");
  }
  std::mt19937_64 rng(seed);
  // Each prime consumes exactly two draws so tables for different zero rates
  // share their non-zero exponents.
  return multfun_from_primes(x0, d, [&](u64) -> std::int32_t {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    auto e = static_cast<std::int32_t>(rng() % d);
    return u < zero_rate ? kZero : e;
  });
}

u64 LevelSetHistogram::total() const {
  u64 t = zeros;
  for (u64 c : counts) t += c;
  return t;
}

u64 LevelSetHistogram::max_fiber() const {
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

std::vector<u64> LevelSetHistogram::sorted_fibers() const {
  auto out = counts;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

LevelSetHistogram level_histogram(const MultFun& f, u64 x) {
  require_range(f, x, "level_histogram");
  LevelSetHistogram h;
  h.d = f.d();
  h.x = x;
  h.counts.assign(f.d(), 0);
  for (u64 n = 1; n <= x; ++n) {
    auto e = f.exponent(n);
    if (e == kZero) {
      ++h.zeros;
    } else {
      ++h.counts[static_cast<std::size_t>(e)];
    }
  }
  return h;
}

WeakEquidistReport check_weak_equidistribution(const MultFun& f, u64 x, double constant) {
  require_range(f, x, "check_weak_equidistribution");
  WeakEquidistReport r;
  const auto hist = level_histogram(f, x);
  r.max_fiber = hist.max_fiber();
  for (u64 p : f.zero_primes()) {
    if (p > x) break;
    r.c_f *= 1.0 - 1.0 / static_cast<double>(p);
  }
  r.bound = constant * static_cast<double>(x) * r.c_f / static_cast<double>(f.d());
  r.ratio = static_cast<double>(r.max_fiber) / r.bound;
  r.holds = static_cast<double>(r.max_fiber) <= r.bound;
  return r;
}

u64 collision_count(const LevelSetHistogram& hist) {
  u64 total = 0;
  for (u64 c : hist.counts) total += c * c;
  return total;
}

double mean_square_powers(const MultFun& f, u64 x, MeanSquareMode mode, u64 budget) {
  require_range(f, x, "mean_square_powers");
  const u64 d = f.d();
  if (mode == MeanSquareMode::histogram) {
    return static_cast<double>(collision_count(level_histogram(f, x)));
  }
  if (d * x > budget) {
    throw ResourceError("mean_square_powers: direct mode needs d*x = " +
                        std::to_string(d * x) + " > budget " + std::to_string(budget));
  }
  std::vector<std::complex<double>> roots(d);
  for (u64 j = 0; j < d; ++j) roots[j] = std::polar(1.0, unit_angle(static_cast<std::int32_t>(j), d));
  double total = 0.0;
  for (u64 ell = 0; ell < d; ++ell) {
    std::complex<double> s{0.0, 0.0};
    for (u64 n = 1; n <= x; ++n) {
      auto e = f.exponent(n);
      if (e == kZero) continue;
      s += roots[(ell * static_cast<u64>(e)) % d];
    }
    total += std::norm(s);
  }
  return total / static_cast<double>(d);
}

double SigmaVector::nonunit_sum() const {
  double s = 0.0;
  for (std::size_t j = 1; j < sigma.size(); ++j) s += sigma[j];
  return s;
}

double SigmaVector::total() const {
  double s = zero_sum;
  for (double v : sigma) s += v;
  return s;
}

SigmaVector sigma_vector(const MultFun& f, u64 x) {
  require_range(f, x, "sigma_vector");
  SigmaVector sv;
  sv.d = f.d();
  sv.x = x;
  sv.sigma.assign(f.d(), 0.0);
  for (u32 p : f.primes().primes()) {
    if (p > x) break;
    auto e = f.exponent(p);
    if (e == kZero) {
      sv.zero_sum += 1.0 / p;
    } else {
      sv.sigma[static_cast<std::size_t>(e)] += 1.0 / p;
    }
  }
  return sv;
}

double big_sigma(const MultFun& f, u64 x) {
  if (f.d() < 2) throw DomainError("big_sigma: P^-(d) needs d >= 2");
  const auto sv = sigma_vector(f, x);
  return std::min(static_cast<double>(least_prime_factor(f.d())), 2.0 + sv.nonunit_sum());
}

double DistanceResult::value() const { return std::sqrt(std::max(0.0, value_squared)); }

DistanceResult pretentious_distance(const MultFun& f, const MultFun& g, u64 x) {
  require_range(f, x, "pretentious_distance");
  require_range(g, x, "pretentious_distance");
  DistanceResult r;
  for (u32 p : f.primes().primes()) {
    if (p > x) break;
    auto a = f.exponent(p);
    auto b = g.exponent(p);
    double re = 0.0;
    if (a != kZero && b != kZero) re = std::cos(unit_angle(a, f.d()) - unit_angle(b, g.d()));
    r.value_squared += (1.0 - re) / p;
  }
  r.value_squared = std::max(0.0, r.value_squared);
  return r;
}

namespace {

// Prime data needed to evaluate D(f, n^{it}; x)^2 for many t.
struct TwistKernel {
  std::vector<double> angle, log_p, weight;
  double zero_mass = 0.0;

  TwistKernel(const MultFun& f, u64 x) {
    for (u32 p : f.primes().primes()) {
      if (p > x) break;
      auto e = f.exponent(p);
      if (e == kZero) {
        zero_mass += 1.0 / p;
        continue;
      }
      angle.push_back(unit_angle(e, f.d()));
      log_p.push_back(std::log(static_cast<double>(p)));
      weight.push_back(1.0 / p);
    }
  }

  double operator()(double t) const {
    double s = zero_mass;
    for (std::size_t i = 0; i < angle.size(); ++i) {
      s += weight[i] * (1.0 - std::cos(angle[i] - t * log_p[i]));
    }
    return s;
  }
};

}  // namespace

double twist_distance_squared(const MultFun& f, u64 x, double t) {
  require_range(f, x, "twist_distance_squared");
  return TwistKernel(f, x)(t);
}

DistanceResult distance_to_twist(const MultFun& f, u64 x, double T, double grid_step,
                                 int refine_rounds) {
  require_range(f, x, "distance_to_twist");
  if (!(T > 0.0) || !(grid_step > 0.0)) {
    throw DomainError("distance_to_twist: T and grid_step must be positive");
  }
  const TwistKernel kernel(f, x);
  const auto half = static_cast<long long>(std::floor(T / grid_step + 1e-9));
  double best_t = 0.0;
  double best = kernel(0.0);
  bool first = true;
  for (long long k = -half; k <= half; ++k) {
    double t = static_cast<double>(k) * grid_step;
    double v = kernel(t);
    if (first || v < best) {
      best = v;
      best_t = t;
      first = false;
    }
  }
  double step = grid_step;
  for (int round = 0; round < refine_rounds; ++round) {
    const double centre = best_t;
    step /= 10.0;
    for (int k = -10; k <= 10; ++k) {
      double t = centre + k * step;
      if (std::abs(t) > T) continue;
      double v = kernel(t);
      if (v < best || (v == best && t < best_t)) {
        best = v;
        best_t = t;
      }
    }
  }
  DistanceResult r;
  r.value_squared = std::max(0.0, best);
  r.minimizing_t = best_t;
  return r;
}

double halasz_rhs(double M, double T, double x, double C) {
  if (!(M >= 0.0) || !(T > 0.0) || !(x > 1.0) || !(C > 0.0)) {
    throw DomainError("halasz_rhs: need M >= 0, T > 0, x > 1, C > 0");
  }
  const double lx = std::log(x);
  return C * ((M + 1.0) * std::exp(-M) + 1.0 / T + std::log(lx) / lx);
}

double variance_delta(const SigmaVector& sv, u64 budget) {
  const u64 d = sv.d;
  if (d < 2) throw DomainError("variance_delta: d must be >= 2");
  if (d * d > budget) {
    throw ResourceError("variance_delta: d^2 = " + std::to_string(d * d) + " exceeds budget");
  }
  double mass = 0.0;
  for (u64 j = 1; j < d; ++j) mass += sv.sigma[j];
  const double centre = mass / 12.0;
  const double dd = static_cast<double>(d);
  double acc = 0.0;
  for (u64 ell = 1; ell <= d; ++ell) {
    double inner = 0.0;
    u64 r = 0;  // ell * j mod d
    const u64 step = ell % d;
    for (u64 j = 1; j < d; ++j) {
      r += step;
      if (r >= d) r -= d;
      double dist = static_cast<double>(std::min(r, d - r)) / dd;
      inner += dist * dist * sv.sigma[j];
    }
    double dev = inner - centre;
    acc += dev * dev;
  }
  return acc / dd;
}

int omega_S(u64 n, std::span<const u64> S) {
  if (n < 1) throw DomainError("omega_S: n must be >= 1");
  int count = 0;
  for (u64 p : S) {
    if (p > n) break;
    while (n % p == 0) {
      n /= p;
      ++count;
    }
  }
  return count;
}

TuranKubiliusReport turan_kubilius_check(const MultFun& f, u64 x, std::int32_t j, double c_tk) {
  require_range(f, x, "turan_kubilius_check");
  const auto& table = f.primes();
  std::vector<bool> in_s(x + 1, false);
  TuranKubiliusReport r;
  double floor_sum = 0.0;
  for (u32 p : table.primes()) {
    if (p > x) break;
    if (f.exponent(p) != j) continue;
    in_s[p] = true;
    r.sigma_j += 1.0 / p;
    for (u64 pk = p; pk <= x; pk *= p) {
      floor_sum += static_cast<double>(x / pk);
      r.prime_power_sum += 1.0 / static_cast<double>(pk);
      if (pk > x / p) break;
    }
  }
  const double xd = static_cast<double>(x);
  r.mean = floor_sum / xd;
  std::vector<std::uint8_t> omega(x + 1, 0);
  double second = r.sigma_j * r.sigma_j;  // n = 1
  for (u64 n = 2; n <= x; ++n) {
    u64 p = table.smallest_factor(n);
    omega[n] = static_cast<std::uint8_t>(omega[n / p] + (in_s[p] ? 1 : 0));
    double dev = omega[n] - r.sigma_j;
    second += dev * dev;
  }
  r.second_moment = second / xd;
  r.difference = r.mean - r.sigma_j;
  r.bound = c_tk * (r.sigma_j + 1.0);
  r.holds = r.second_moment <= r.bound;
  return r;
}

OrthogonalityReport orthogonality_identity_check(const Character& chi, u64 x) {
  OrthogonalityReport r;
  r.lhs = {0.0, 0.0};
  if (x < 2) return r;
  const PrimeTable table(x);
  const u64 d = chi.d();
  const auto& roots = chi.roots();
  for (u64 ell = 1; ell <= d; ++ell) {
    for (u32 p : table.primes()) {
      auto e = chi.exponent(p);
      if (e == kZero) continue;
      r.lhs += roots[(ell * static_cast<u64>(e)) % d] / static_cast<double>(p);
    }
  }
  double ones = 0.0;
  for (u32 p : table.primes()) {
    if (chi.exponent(p) == 0) ones += 1.0 / p;
  }
  r.rhs = static_cast<double>(d) * ones;
  r.error = std::abs(r.lhs - r.rhs);
  return r;
}

}  // namespace charsums
