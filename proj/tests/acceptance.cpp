// Acceptance suite: one PASS/FAIL line per criterion, with timings.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "charsums/addcomb.hpp"
#include "charsums/characters.hpp"
#include "charsums/dickman.hpp"
#include "charsums/experiments.hpp"
#include "charsums/multfun.hpp"

using namespace charsums;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  for (u64 q = 3; q <= n; ++q) {
    if (is_prime(q)) out.push_back(q);
  }
  return out;
}

// Criterion 1: both mean-square algorithms for q <= 500, every d | q - 1.
Outcome mean_square_identity() {
  Outcome o;
  std::size_t cases = 0;
  double worst = 0.0;
  for (u64 q : primes_up_to(500)) {
    const auto dlog = std::make_shared<const DlogTable>(q);
    const double qd = static_cast<double>(q);
    const std::vector<u64> xs{static_cast<u64>(std::floor(std::pow(qd, 0.4))),
                              static_cast<u64>(std::floor(std::pow(qd, 0.7))), q - 1};
    for (u64 d : divisors(q - 1)) {
      // d = 1 is the principal character, constant 1 below q.
      const Character chi(dlog, d == 1 ? q - 1 : d, 1);
      const MultFun f = d == 1 ? multfun_from_primes(q - 1, 1, [](u64) { return 0; })
                               : from_character(chi, q - 1);
      for (u64 x : xs) {
        std::vector<u64> counts(d, 0);
        for (u64 n = 1; n <= x; ++n) {
          const auto e = d == 1 ? 0 : chi.exponent(n);
          ++counts[static_cast<std::size_t>(e)];
        }
        u64 squares = 0;
        for (u64 c : counts) squares += c * c;
        const double h = mean_square_powers(f, x, MeanSquareMode::histogram);
        const double dir = mean_square_powers(f, x, MeanSquareMode::direct);
        const double rel = std::abs(dir - h) / h;
        worst = std::max(worst, rel);
        if (rel > 1e-6 || static_cast<u64>(h) != squares || collision_count(level_histogram(f, x)) != squares) {
          o.ok = false;
        }
        ++cases;
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu (q,d,x) cases, max relative gap %.2e, integer identity exact", cases, worst);
  o.detail = buf;
  return o;
}

// Criterion 2: multiplicativity, exact order, fiber sizes, orthogonality.
Outcome character_group() {
  Outcome o;
  std::size_t chars = 0;
  double worst = 0.0;
  for (u64 q : primes_up_to(500)) {
    const auto dlog = std::make_shared<const DlogTable>(q);
    for (u64 d : divisors(q - 1)) {
      if (d == 1) continue;  // principal: covered by the d | ell branch below
      const Character chi(dlog, d, 1);
      ++chars;
      for (u64 n = 1; n < q && o.ok; ++n) {
        for (u64 m = 1; m < q; ++m) {
          const u64 lhs = static_cast<u64>(chi.exponent(n * m % q));
          const u64 rhs = (static_cast<u64>(chi.exponent(n)) + static_cast<u64>(chi.exponent(m))) % d;
          if (lhs != rhs) {
            o.ok = false;
            o.detail = "multiplicativity fails at q=" + std::to_string(q) + " d=" + std::to_string(d);
            break;
          }
        }
      }
      std::vector<u64> fibers(d, 0);
      for (u64 n = 1; n < q; ++n) ++fibers[static_cast<std::size_t>(chi.exponent(n))];
      for (u64 c : fibers) {
        if (c != (q - 1) / d) {
          o.ok = false;
          o.detail = "fiber size fails at q=" + std::to_string(q) + " d=" + std::to_string(d);
        }
      }
      for (u64 ell = 0; ell <= d; ++ell) {
        const auto s = power_partial_sum(chi, ell, q - 1);
        const double err = ell % d == 0 ? std::abs(s - std::complex<double>(static_cast<double>(q - 1), 0.0))
                                        : std::abs(s);
        worst = std::max(worst, err);
        if (err > 1e-9) o.ok = false;
      }
    }
  }
  if (o.ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu characters, all fibers (q-1)/d, max orthogonality error %.2e", chars, worst);
    o.detail = buf;
  }
  return o;
}

// Criterion 3: Dickman solver.
Outcome dickman_solver() {
  Outcome o;
  const DickmanTable t(50.0, 1e-4);
  const bool one = t.rho(1.0) == 1.0;
  const double at2 = std::abs(t.rho(2.0) - (1.0 - std::log(2.0)));
  const DickmanTable coarse(20.0, 1e-4), fine(20.0, 5e-5);
  double halving = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i) halving = std::max(halving, std::abs(coarse.at(i) - fine.at(2 * i)));
  // Interior nodes: the central-difference stencil must not straddle u = 1 or u = 2,
  // where rho' and rho'' jump.
  const std::size_t P = 10000;
  double residual = 0.0;
  for (std::size_t i = P + 1; i + 1 < t.size(); ++i) {
    if (i == 2 * P) continue;
    const double u = static_cast<double>(i) * 1e-4;
    const double deriv = (t.at(i + 1) - t.at(i - 1)) / 2e-4;
    residual = std::max(residual, std::abs(u * deriv + t.at(i - P)));
  }
  o.ok = one && at2 < 1e-9 && halving < 1e-9 && residual < 1e-7;
  char buf[200];
  std::snprintf(buf, sizeof buf, "rho(1)=1 %s, |rho(2)-(1-ln2)|=%.1e, halving gap %.1e, residual %.1e",
                one ? "exact" : "NOT exact", at2, halving, residual);
  o.detail = buf;
  return o;
}

// Criterion 4: brute-force maxima against the BHP bound.
Outcome bhp_vs_bruteforce() {
  Outcome o;
  const std::vector<std::pair<u64, u64>> pairs{{2, 1}, {3, 1}, {4, 1}, {3, 2}};
  u64 nodes = 0, equal = 0;
  for (u64 n = 1; n <= 24; ++n) {
    for (auto [k, l] : pairs) {
      const auto r = max_kl_set_bruteforce(n, k, l);
      nodes += r.nodes;
      const auto bound = bhp_bound(n, k, l);
      if (static_cast<std::int64_t>(r.size) > bound) {
        o.ok = false;
        o.detail = "bound exceeded at n=" + std::to_string(n);
      }
      equal += static_cast<std::int64_t>(r.size) == bound;
    }
  }
  const auto eq = max_kl_set_bruteforce(12, 2, 1);
  const bool attained = eq.size == 6 && bhp_bound(12, 2, 1) == 6;
  o.ok = o.ok && attained;
  if (o.detail.empty()) {
    o.detail = "96 (n,k,l) cases, bound attained in " + std::to_string(equal) + ", (12,2,1) gives " +
               std::to_string(eq.size) + " = " + std::to_string(bhp_bound(12, 2, 1)) + ", " +
               std::to_string(nodes) + " search nodes";
  }
  return o;
}

// Criterion 5: doubling over all admissible symmetric sets.
Outcome freiman_doubling() {
  Outcome o;
  u64 sets = 0, bad = 0;
  for (u64 d : {5u, 7u, 11u, 13u}) {
    for (double c : {0.3, 0.4, 0.5}) {
      if (static_cast<double>(least_prime_factor(d)) * c <= 1.0) continue;
      const u64 half = d / 2;
      for (u64 mask = 0; mask < (u64{1} << (half + 1)); ++mask) {
        CyclicSubset a(d);
        if (mask & 1) a.insert(0);
        for (u64 x = 1; x <= half; ++x) {
          if ((mask >> x) & 1) a.insert(x), a.insert(d - x);
        }
        if (static_cast<double>(a.size()) < c * static_cast<double>(d)) continue;
        ++sets;
        bad += freiman_doubling_check(a, c).counterexample();
      }
    }
  }
  o.ok = bad == 0;
  o.detail = std::to_string(sets) + " (d, c, A) instances, " + std::to_string(bad) + " counterexamples";
  return o;
}

// Criterion 6: the prime-sum orthogonality identity.
Outcome orthogonality_identity() {
  Outcome o;
  double worst = 0.0;
  std::size_t cases = 0;
  for (u64 q : primes_up_to(500)) {
    const auto dlog = std::make_shared<const DlogTable>(q);
    for (u64 d : divisors(q - 1)) {
      if (d == 1) continue;
      const auto r = orthogonality_identity_check(Character(dlog, d, 1), q - 1);
      worst = std::max(worst, r.error);
      ++cases;
    }
  }
  o.ok = worst < 1e-9;
  char buf[120];
  std::snprintf(buf, sizeof buf, "%zu (q,d) cases, max |LHS-RHS| %.2e", cases, worst);
  o.detail = buf;
  return o;
}

// Criterion 7: elementary desk checks.
Outcome elementary_checks() {
  Outcome o;
  std::ostringstream msg;
  const u64 n7 = least_nonone(make_character(7, 2, 1));
  const u64 psi = friable_count(100, 10);
  msg << "n_chi(mod 7)=" << n7 << ", Psi(100,10)=" << psi;
  o.ok = n7 == 3 && psi == 46;

  const DickmanTable rho(5.0, 1e-4);
  double worst = 0.0;
  u64 worst_q = 0;
  for (u64 k = 1; k <= 10; ++k) {
    u64 q = 10000 * k;
    while (!is_prime(q)) ++q;
    const u64 y = static_cast<u64>(std::floor(std::sqrt(static_cast<double>(q))));
    const double gap = std::abs(static_cast<double>(friable_count(q, y)) / static_cast<double>(q) - rho.rho(2.0));
    if (gap > worst) worst = gap, worst_q = q;
  }
  o.ok = o.ok && worst < 0.05;
  msg << ", max |Psi(q,sqrt q)/q - rho(2)| = " << worst << " at q=" << worst_q;

  std::size_t sampled = 0, held = 0;
  for (u64 q : {211u, 421u, 631u, 2311u, 4621u}) {
    const auto dlog = std::make_shared<const DlogTable>(q);
    const auto divs = divisors(q - 1);
    // Four moduli per prime spread across the divisor list.
    for (std::size_t i = 1; i <= 4; ++i) {
      const u64 d = divs[i * (divs.size() - 1) / 4];
      const Character chi(dlog, d, 1);
      ++sampled;
      bool all = true;
      for (u64 K : {u64{1}, std::max<u64>(1, d / 2), d, 2 * d, 10 * d}) {
        all = all && erdos_turan_discrepancy_check(chi, K, 10.0).holds();
      }
      held += all;
    }
  }
  o.ok = o.ok && held == sampled;
  msg << ", discrepancy bound (C=10) held for " << held << "/" << sampled << " characters";
  o.detail = msg.str();
  return o;
}

// Criterion 8: scans on the default corpus, deterministic across thread counts.
Outcome scan_properties() {
  Outcome o;
  const auto config = default_config();
  using Scan = std::function<ExperimentReport(unsigned)>;
  const std::vector<std::pair<std::string, Scan>> scans{
      {"levelset", [&](unsigned t) { return run_levelset_scan(config, t); }},
      {"meansquare", [&](unsigned t) { return run_meansquare_scan(config, t); }},
      {"pv", [&](unsigned t) { return run_pv_scan(config, t); }},
      {"elementary", [&](unsigned t) { return run_elementary_scan(config, t); }},
      {"addcomb", [&](unsigned t) { return run_addcomb_verify(config, AddcombOptions{}, t); }},
  };
  std::ostringstream msg;
  std::size_t checks = 0;
  for (const auto& [name, run] : scans) {
    const auto one = run(1);
    const auto four = run(4);
    const bool same = to_csv(one) == to_csv(four);
    const bool passed = one.all_passed();
    checks += one.count(Status::pass);
    if (!same || !passed) {
      o.ok = false;
      msg << name << (same ? "" : " differs across thread counts") << (passed ? "" : " has failing rows") << "; ";
    }
  }
  msg << checks << " cross-check rows passed, CSV identical at 1 and 4 threads";
  o.detail = msg.str();
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "mean-square identity", 60, mean_square_identity},
      {2, "character-group exactness", 30, character_group},
      {3, "Dickman solver", 10, dickman_solver},
      {4, "BHP bound vs brute force", 300, bhp_vs_bruteforce},
      {5, "doubling ceiling", 120, freiman_doubling},
      {6, "prime-sum orthogonality", 30, orthogonality_identity},
      {7, "elementary desk checks", 60, elementary_checks},
      {8, "scan determinism and cross-checks", 600, scan_properties},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool ok = o.ok && in_time;
    failures += !ok;
    std::printf("%s criterion %d (%s): %s [%.2fs / %.0fs]\n", ok ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
