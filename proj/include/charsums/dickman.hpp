#pragma once

// Dickman–de Bruijn rho on a uniform grid, from
//   u rho'(u) + rho(u - 1) = 0 (u > 1),  rho = 1 on [0, 1].

#include <cstddef>
#include <vector>

namespace charsums {

class DickmanTable {
 public:
  /// Closed form on [0, 2]; beyond that a power series in (k - u) on each
  /// unit interval [k-1, k], built interval by interval from the previous one.
  /// The grid holds samples of it. `step` must be <= 1e-3 and divide 1 evenly.
  DickmanTable(double u_max = 50.0, double step = 1e-4);

  double u_max() const { return u_max_; }
  double step() const { return step_; }
  std::size_t size() const { return values_.size(); }
  /// rho at grid node i (u = i * step).
  double at(std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  /// True when some values fell below 1e-300 and were stored as 0.
  bool clamped() const { return clamped_; }

  /// rho(u) for 0 <= u <= u_max, evaluated from the series (not the grid).
  /// Throws RangeError outside the table.
  double rho(double u) const;
  /// sigma_-(u) = u rho(u).
  double sigma_minus(double u) const { return u * rho(u); }

 private:
  double series(double u) const;

  double u_max_;
  double step_;
  std::size_t per_unit_;
  std::vector<std::vector<double>> coeffs_;
  std::vector<double> values_;
  bool clamped_ = false;
};

DickmanTable build_rho(double u_max = 50.0, double step = 1e-4);

/// rho on [0, 2] in closed form: 1 on [0, 1], 1 - log u on [1, 2].
double rho_closed_form(double u);

struct RhoLowerBoundReport {
  double u = 0.0;
  double rho = 0.0;
  double lower = 0.0;  // constant * (e / (2 u log u))^u
  double ratio = 0.0;  // rho / lower
  bool holds() const { return ratio >= 1.0; }
};

RhoLowerBoundReport rho_lower_bound_check(const DickmanTable& table, double u,
                                          double constant = 1.0);

/// Smallest grid point u0 >= 2 such that the lower bound holds at every grid
/// point in [u0, u_max]. Returns u_max + step when it never settles.
double rho_lower_bound_onset(const DickmanTable& table, double constant = 1.0);

/// Smallest grid point u1 from which sigma_- is non-increasing up to u_max.
double sigma_minus_turning_point(const DickmanTable& table);

/// C1 / rho(C2 / (eta delta)). Throws RangeError when the argument leaves
/// the table.
double order_threshold(const DickmanTable& table, double eta, double delta, double C1,
                       double C2);

}  // namespace charsums
