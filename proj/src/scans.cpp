#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <memory>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "charsums/addcomb.hpp"
#include "charsums/characters.hpp"
#include "charsums/dickman.hpp"
#include "charsums/error.hpp"
#include "charsums/experiments.hpp"
#include "charsums/multfun.hpp"

namespace charsums {

namespace {

using Rows = std::vector<ReportRow>;

struct Cell {
  u64 q = 0;
  u64 d = 0;  // 0 marks a per-q cell
  std::shared_ptr<const DlogTable> dlog;
};

/// Runs fn over cells on a pool of workers; rows are concatenated in cell
/// order and sorted, and the first worker exception is rethrown.
template <class Item, class Fn>
ExperimentReport run_cells(const std::vector<Item>& cells, unsigned threads, Fn fn) {
  std::vector<Rows> out(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
      try {
        out[i] = fn(cells[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  ExperimentReport report;
  for (auto& rows : out) {
    for (auto& r : rows) report.add(std::move(r));
  }
  report.sort();
  return report;
}

std::map<u64, std::shared_ptr<const DlogTable>> dlog_tables(const ExperimentConfig& config) {
  std::map<u64, std::shared_ptr<const DlogTable>> out;
  for (u64 q : config.primes()) out[q] = std::make_shared<const DlogTable>(q);
  return out;
}

std::vector<Cell> character_cells(const ExperimentConfig& config, bool every_modulus) {
  std::vector<Cell> cells;
  for (const auto& [q, dlog] : dlog_tables(config)) {
    for (u64 d : every_modulus ? config.all_moduli(q) : config.moduli(q)) cells.push_back({q, d, dlog});
  }
  return cells;
}

ReportRow row(const char* experiment, u64 q, u64 d, std::int64_t index, u64 x, const char* metric,
              double lhs, double rhs, Status status = Status::info, std::string note = {}) {
  return {experiment, q, d, index, x, metric, lhs, rhs, safe_ratio(lhs, rhs), status, std::move(note)};
}

Status verdict(bool ok) { return ok ? Status::pass : Status::fail; }

std::string fmt(const char* pattern, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

ExperimentReport run_levelset_scan(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  const double c1 = config.constant("c1");
  const double C5 = config.constant("C5");
  const bool squarefree_only = config.d_policy == DPolicy::squarefree;
  // Non-squarefree moduli still get a row, marked skipped, under that policy.
  const auto cells = character_cells(config, squarefree_only);
  return run_cells(cells, threads, [&](const Cell& c) {
    Rows rows;
    const u64 q = c.q, d = c.d;
    if (squarefree_only && !is_squarefree(d)) {
      rows.push_back(row("levelset", q, d, -1, 0, "max_fiber", 0, 0, Status::skipped,
                         "d not squarefree"));
      return rows;
    }
    if (d < 3) {
      rows.push_back(row("levelset", q, d, -1, 0, "max_fiber", 0, 0, Status::skipped,
                         "log log d <= 0"));
      return rows;
    }
    const double ld = std::log(static_cast<double>(d));
    const double delta_regime =
        std::max(std::sqrt(std::log(1.0 + ld) / (c1 * ld)), std::pow(std::log(static_cast<double>(q)), -c1));
    std::string note;
    if (delta_regime >= 1.0) {
      note = "delta regime not met (" + fmt("%.3f", delta_regime) + ")";
    } else if (delta_regime > config.delta) {
      note = "delta clamped from " + fmt("%.3f", delta_regime);
    }
    const Character chi(c.dlog, d, 1);
    const auto& exps = chi.exponents();
    for (u64 x : config.lengths(q)) {
      std::vector<u64> counts(d, 0);
      for (u64 n = 1; n <= x; ++n) {
        const auto e = exps[n % q];
        if (e != kZero) ++counts[static_cast<std::size_t>(e)];
      }
      const double fiber = static_cast<double>(*std::max_element(counts.begin(), counts.end()));
      const double xd = static_cast<double>(x);
      rows.push_back(row("levelset", q, d, -1, x, "max_fiber", fiber,
                         xd / std::pow(std::log(ld), 1.0 / 25.0), Status::info, note));
      rows.push_back(row("levelset", q, d, -1, x, "weak_equidist", fiber,
                         C5 * xd / static_cast<double>(d)));
    }
    return rows;
  });
}

ExperimentReport run_meansquare_scan(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  const double c_tk = config.constant("C_TK");
  const double halasz_C = config.constant("halasz_C");
  const auto cells = character_cells(config, false);
  return run_cells(cells, threads, [&](const Cell& c) {
    Rows rows;
    const u64 q = c.q, d = c.d;
    const Character chi(c.dlog, d, 1);
    const MultFun f = from_character(chi, q - 1);
    const double P = static_cast<double>(least_prime_factor(d));
    const double G = std::min(P, std::log(1.0 + std::log(static_cast<double>(d))));
    const std::string trivial = d % 2 == 0 ? "trivial bound" : "";
    for (u64 x : config.lengths(q)) {
      const double xd = static_cast<double>(x);
      const auto hist = level_histogram(f, x);
      const u64 collisions = collision_count(hist);
      const double ms_hist = mean_square_powers(f, x, MeanSquareMode::histogram);
      const double ms_direct = mean_square_powers(f, x, MeanSquareMode::direct);
      const bool exact = static_cast<u64>(ms_hist) == collisions;
      const bool agree = std::abs(ms_direct - ms_hist) <= 1e-6 * std::max(1.0, ms_hist);
      rows.push_back(row("meansquare", q, d, -1, x, "dual_mode", ms_direct, ms_hist,
                         verdict(agree && exact), exact ? "" : "histogram not exact"));

      u64 nonzero = 0;
      for (u64 v : hist.counts) nonzero += v;
      const double dd = static_cast<double>(d);
      const double nz = static_cast<double>(nonzero);
      const double lhs = (dd * static_cast<double>(collisions) - nz * nz) / dd / (xd * xd);
      const double lg = std::log(G);
      rows.push_back(row("meansquare", q, d, -1, x, "nonprincipal_ms", lhs,
                         lg * lg / std::pow(G, 1.0 / 11.0), Status::info, trivial));

      const double S = big_sigma(f, x);
      const double ls = std::log(S);
      rows.push_back(row("meansquare", q, d, -1, x, "sigma_ms", lhs, ls * ls / std::pow(S, 1.0 / 11.0)));

      // J-th largest fiber against sqrt(ms / J).
      const auto fibers = hist.sorted_fibers();
      double worst = 0.0;
      for (std::size_t J = 1; J <= fibers.size(); ++J) {
        worst = std::max(worst, static_cast<double>(fibers[J - 1]) * std::sqrt(static_cast<double>(J)));
      }
      const double cap = std::sqrt(ms_hist);
      rows.push_back(row("meansquare", q, d, -1, x, "fiber_rearrangement", worst, cap,
                         verdict(worst <= cap * (1.0 + 1e-12))));
    }
    const u64 x = q - 1;
    const auto tk = turan_kubilius_check(f, x, 1, c_tk);
    rows.push_back(row("meansquare", q, d, 1, x, "turan_kubilius", tk.second_moment, tk.bound));
    const auto twist = distance_to_twist(f, x, 10.0, 1e-2, 2);
    const double sum = std::abs(partial_sum(chi, x)) / static_cast<double>(x);
    rows.push_back(row("meansquare", q, d, -1, x, "halasz", sum,
                       halasz_rhs(twist.value_squared, 10.0, static_cast<double>(x), halasz_C)));
    return rows;
  });
}

ExperimentReport run_pv_scan(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  const double C3 = config.constant("C3");
  const double c2 = config.constant("c2");
  const auto cells = character_cells(config, false);
  return run_cells(cells, threads, [&](const Cell& c) {
    Rows rows;
    const u64 q = c.q, d = c.d;
    const Character chi(c.dlog, d, 1);
    const auto sums = max_sums_over_powers(chi);
    double total = 0.0;
    for (double s : sums) total += s;
    const double qd = static_cast<double>(q);
    const double scale = std::sqrt(qd) * std::log(qd);
    const double normalized = total / static_cast<double>(d) / scale;
    const double ll = std::log(std::log(qd));
    const double P = static_cast<double>(least_prime_factor(d));
    const double rhs = std::sqrt(std::max(0.0, std::log(ll)) / ll) + 1.0 / P;
    const std::string note = is_prime(d) ? "prime order" : "";
    rows.push_back(row("pv", q, d, -1, q, "pv_ratio", normalized, rhs, Status::info, note));
    rows.push_back(row("pv", q, d, -1, q, "pv_envelope", normalized, C3, verdict(normalized <= C3), note));

    const auto xi = xi_structure_from_sums(chi, sums, config.epsilon, config.k, c2);
    const double size = static_cast<double>(xi.xi.size());
    rows.push_back(row("pv", q, d, -1, q, "xi_symmetric", xi.symmetric ? 1 : 0, 1, verdict(xi.symmetric)));
    rows.push_back(row("pv", q, d, -1, q, "xi_disjoint", xi.disjoint ? 1 : 0, 1, Status::info,
                       "2k=" + std::to_string(2 * xi.k)));
    rows.push_back(row("pv", q, d, -1, q, "xi_bhp", size, static_cast<double>(xi.bhp),
                       verdict(xi.bhp_consistent()), xi.disjoint ? "" : "not disjoint"));
    rows.push_back(row("pv", q, d, -1, q, "xi_size", size, xi.prop_bound, Status::info,
                       xi.in_regime ? "" : "epsilon below regime threshold " + fmt("%.4f", xi.regime_threshold)));
    return rows;
  });
}

ExperimentReport run_elementary_scan(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  const double C = config.constant("C");
  const double C1 = config.constant("C1");
  const double C2 = config.constant("C2");
  const double C4 = config.constant("C4");
  const double c = config.constant("c");
  const double c0 = config.constant("c0");
  const double delta = config.delta;
  const auto rho_table = std::make_shared<const DickmanTable>(50.0, 1e-4);
  const double rho_u = rho_table->rho(1.0 / delta);

  std::vector<Cell> cells;
  for (const auto& [q, dlog] : dlog_tables(config)) {
    cells.push_back({q, 0, dlog});
    for (u64 d : config.moduli(q)) cells.push_back({q, d, dlog});
  }
  return run_cells(cells, threads, [&](const Cell& cell) {
    Rows rows;
    const u64 q = cell.q, d = cell.d;
    const double qd = static_cast<double>(q);
    const u64 y = std::min<u64>(q - 1, static_cast<u64>(std::floor(std::pow(qd, delta))));
    if (d == 0) {
      const double psi = static_cast<double>(friable_count(q, y)) / qd;
      rows.push_back(row("elementary", q, 0, -1, y, "psi_density", psi, rho_u));
      const double s = static_cast<double>(count_S_delta(q, delta)) / qd;
      rows.push_back(row("elementary", q, 0, -1, y, "S_delta_density", s,
                         rho_u * std::pow(c0, -1.0 / delta)));
      try {
        const double t = order_threshold(*rho_table, config.eta, delta, C1, C2);
        rows.push_back(row("elementary", q, 0, -1, 0, "order_threshold", t, 1.0));
      } catch (const RangeError& e) {
        rows.push_back(row("elementary", q, 0, -1, 0, "order_threshold", 0, 0, Status::skipped, e.what()));
      }
      return rows;
    }
    const Character chi(cell.dlog, d, 1);
    const double dd = static_cast<double>(d);
    const u64 n_chi = least_nonone(chi);
    const double ld = std::log(dd);
    rows.push_back(row("elementary", q, d, -1, 0, "n_chi", static_cast<double>(n_chi),
                       std::pow(qd, std::log(std::log(C * dd * ld)) / ld)));

    double max_arg = 0.0;
    for (u64 n = 1; n <= y; ++n) {
      const auto e = chi.exponent(n);
      if (e != kZero) max_arg = std::max(max_arg, std::abs(arg_of_exponent(e, d)));
    }
    rows.push_back(row("elementary", q, d, -1, y, "arg_max", max_arg,
                       std::max(1.0 / dd, std::pow(rho_u, c))));
    if (n_chi <= y) {
      rows.push_back(row("elementary", q, d, -1, y, "arg_floor", max_arg, 1.0 / dd,
                         verdict(max_arg * dd >= 1.0 - 1e-12)));
    } else {
      rows.push_back(row("elementary", q, d, -1, y, "arg_floor", max_arg, 1.0 / dd, Status::skipped,
                         "n_chi > q^delta"));
    }
    const auto disc = erdos_turan_discrepancy_check(chi, d, C4);
    rows.push_back(row("elementary", q, d, -1, 0, "arg_discrepancy", disc.max_discrepancy, disc.bound,
                       verdict(disc.holds()), disc.exhaustive ? "" : "subsampled endpoints"));
    return rows;
  });
}

ExperimentReport run_addcomb_verify(const ExperimentConfig& config, const AddcombOptions& options,
                                    unsigned threads) {
  struct Job {
    int kind;  // 0 bhp, 1 doubling, 2 approximate homomorphism
    u64 d, a, b;
    double c;
  };
  std::vector<Job> jobs;
  for (u64 n = 1; n <= options.n_max; ++n) {
    for (auto [k, l] : options.pairs) jobs.push_back({0, n, k, l, 0.0});
  }
  for (u64 d : options.exhaustive_d) {
    for (double c : options.densities) jobs.push_back({1, d, 0, 0, c});
    for (u64 seed : config.seeds) jobs.push_back({2, d, seed, 0, 0.0});
  }
  return run_cells(jobs, threads, [&](const Job& job) {
    Rows rows;
    if (job.kind == 0) {
      const auto best = max_kl_set_bruteforce(job.d, job.a, job.b);
      const auto bound = bhp_bound(job.d, job.a, job.b);
      ReportRow r = row("addcomb", 0, job.d, static_cast<std::int64_t>(job.a), job.b, "max_kl_set",
                        static_cast<double>(best.size), static_cast<double>(bound),
                        verdict(static_cast<std::int64_t>(best.size) <= bound),
                        best.witness.to_string());
      rows.push_back(std::move(r));
    } else if (job.kind == 1) {
      const u64 d = job.d;
      const auto index = static_cast<std::int64_t>(std::llround(job.c * 100));
      if (static_cast<double>(least_prime_factor(d)) * job.c <= 1.0) {
        rows.push_back(row("addcomb", 0, d, index, 0, "doubling", 0, 0, Status::skipped, "P^-(d) <= 1/c"));
        return rows;
      }
      // Symmetric sets are unions of {0} and pairs {a, d - a}.
      const u64 half = d / 2;
      const u64 sets = u64{1} << (half + 1);
      u64 checked = 0, bad = 0, ceiling = 0;
      for (u64 mask = 0; mask < sets; ++mask) {
        CyclicSubset A(d);
        if (mask & 1u) A.insert(0);
        for (u64 a = 1; a <= half; ++a) {
          if ((mask >> a) & 1u) {
            A.insert(a);
            A.insert(d - a);
          }
        }
        if (static_cast<double>(A.size()) < job.c * static_cast<double>(d)) continue;
        const auto r = freiman_doubling_check(A, job.c);
        ceiling = r.ceiling;
        ++checked;
        if (r.counterexample()) ++bad;
      }
      rows.push_back(row("addcomb", 0, d, index, 0, "doubling", static_cast<double>(bad), 0,
                         verdict(bad == 0),
                         "sets=" + std::to_string(checked) + " ceiling=" + std::to_string(ceiling)));
    } else {
      const u64 d = job.d;
      std::mt19937_64 rng(job.a);
      std::uniform_real_distribution<double> unit(-1.0, 1.0);
      std::vector<double> phi(d, 0.0);
      for (u64 a = 1; a < d; ++a) phi[a] = unit(rng);
      const ApproxHom h(phi);
      const double defect = approx_hom_defect(h);
      const double sup = approx_hom_sup(h);
      const double limit = static_cast<double>(d - 1) / static_cast<double>(d);
      rows.push_back(row("addcomb", 0, d, static_cast<std::int64_t>(job.a), 0, "hyers",
                         sup / defect, limit, verdict(sup <= limit * defect * (1.0 + 1e-12))));
    }
    return rows;
  });
}

std::string dickman_table_csv(double u_max, double spacing, double step) {
  if (!(spacing > 0.0)) throw DomainError("dickman_table_csv: spacing must be positive");
  const DickmanTable table(u_max, step);
  std::string out = "u,rho,sigma_minus\r\n";
  const auto n = static_cast<u64>(std::floor(u_max / spacing + 1e-9));
  char buf[128];
  for (u64 i = 0; i <= n; ++i) {
    const double u = static_cast<double>(i) * spacing;
    const double r = table.rho(u);
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\r\n", u, r, u * r);
    out += buf;
  }
  return out;
}

std::string headline_metric(const std::string& scan) {
  if (scan == "levelset-scan") return "max_fiber";
  if (scan == "meansquare-scan") return "nonprincipal_ms";
  if (scan == "pv-scan") return "pv_ratio";
  if (scan == "elementary-scan") return "n_chi";
  if (scan == "addcomb-verify") return "max_kl_set";
  return "";
}

}  // namespace charsums
