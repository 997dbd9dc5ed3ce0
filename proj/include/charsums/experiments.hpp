#pragma once

// Desk-scale sweeps. Each scan splits its work into independent (q, d)
// cells, runs them on `threads` workers and returns rows sorted by key, so
// output does not depend on the thread count.

#include <string>
#include <vector>

#include "charsums/config.hpp"
#include "charsums/report.hpp"

namespace charsums {

ExperimentReport run_levelset_scan(const ExperimentConfig& config, unsigned threads = 1);
ExperimentReport run_meansquare_scan(const ExperimentConfig& config, unsigned threads = 1);
ExperimentReport run_pv_scan(const ExperimentConfig& config, unsigned threads = 1);
ExperimentReport run_elementary_scan(const ExperimentConfig& config, unsigned threads = 1);

struct AddcombOptions {
  u64 n_max = 24;
  std::vector<std::pair<u64, u64>> pairs{{2, 1}, {3, 1}, {4, 1}, {3, 2}};
  std::vector<u64> exhaustive_d{5, 7, 11, 13};
  std::vector<double> densities{0.3, 0.4, 0.5};
};

/// Brute-force (k, l)-set maxima against the BHP bound, exhaustive doubling
/// over symmetric sets, and sup/defect ratios of random maps Z/dZ -> R.
ExperimentReport run_addcomb_verify(const ExperimentConfig& config, const AddcombOptions& options,
                                    unsigned threads = 1);

/// CSV with columns u, rho, sigma_minus at the given spacing.
std::string dickman_table_csv(double u_max, double spacing, double step = 1e-4);

/// The metric plotted for each scan.
std::string headline_metric(const std::string& scan);

}  // namespace charsums
