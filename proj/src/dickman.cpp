#include "charsums/dickman.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "charsums/error.hpp"

namespace charsums {

double rho_closed_form(double u) {
  if (u < 0.0 || u > 2.0) throw RangeError("rho_closed_form: u outside [0, 2]");
  return u <= 1.0 ? 1.0 : 1.0 - std::log(u);
}

namespace {

constexpr std::size_t kTerms = 64;

}  // namespace

DickmanTable::DickmanTable(double u_max, double step) : u_max_(u_max), step_(step) {
  if (!(u_max >= 2.0)) throw DomainError("build_rho: u_max must be >= 2");
  if (!(step > 0.0)) throw DomainError("build_rho: step must be positive");
  if (step > 1e-3) {
    throw AccuracyError("build_rho: step " + std::to_string(step) + " exceeds 1e-3");
  }
  const double inverse = 1.0 / step;
  per_unit_ = static_cast<std::size_t>(std::llround(inverse));
  if (std::abs(static_cast<double>(per_unit_) - inverse) > 1e-6 * inverse) {
    throw DomainError("build_rho: step must divide 1 evenly");
  }

  // On [k-1, k], rho(u) = sum_j c_j (k-u)^j with every c_j >= 0:
  //   c_{j+1} = (a_j + j c_j) / (k (j+1)),  c_0 = sum_{j>=1} c_j / ((j+1)(k-1)),
  // where a_j are the coefficients on [k-2, k-1].
  const auto units = static_cast<std::size_t>(std::ceil(u_max - 1e-12));
  coeffs_.assign(units + 1, std::vector<double>(kTerms, 0.0));
  coeffs_[1][0] = 1.0;
  for (std::size_t k = 2; k <= units; ++k) {
    const auto& a = coeffs_[k - 1];
    auto& c = coeffs_[k];
    const double kd = static_cast<double>(k);
    for (std::size_t j = 0; j + 1 < kTerms; ++j) {
      c[j + 1] = (a[j] + static_cast<double>(j) * c[j]) / (kd * static_cast<double>(j + 1));
    }
    double sum = 0.0;
    for (std::size_t j = kTerms - 1; j >= 1; --j) sum += c[j] / static_cast<double>(j + 1);
    c[0] = sum / (kd - 1.0);
  }

  const std::size_t P = per_unit_;
  const auto n = static_cast<std::size_t>(std::ceil(u_max * static_cast<double>(P) - 1e-9));
  values_.assign(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(P);
    double v = u <= 2.0 ? rho_closed_form(u) : series(u);
    if (v < 1e-300) {
      v = 0.0;
      clamped_ = true;
    }
    values_[i] = v;
  }
}

double DickmanTable::series(double u) const {
  const auto k = std::min(coeffs_.size() - 1, static_cast<std::size_t>(std::ceil(u)));
  const double xi = static_cast<double>(k) - u;
  const auto& c = coeffs_[k];
  double r = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) r = r * xi + c[j];
  return r;
}

double DickmanTable::rho(double u) const {
  if (!(u >= 0.0) || u > u_max_ + 0.5 * step_) {
    throw RangeError("rho: u = " + std::to_string(u) + " outside [0, " +
                     std::to_string(u_max_) + "]");
  }
  if (u <= 2.0) return rho_closed_form(u);
  const double r = series(u);
  return r < 1e-300 ? 0.0 : r;
}

DickmanTable build_rho(double u_max, double step) { return DickmanTable(u_max, step); }

RhoLowerBoundReport rho_lower_bound_check(const DickmanTable& table, double u, double constant) {
  if (!(u >= 2.0)) throw DomainError("rho_lower_bound_check: u must be >= 2");
  RhoLowerBoundReport r;
  r.u = u;
  r.rho = table.rho(u);
  r.lower = constant * std::pow(std::numbers::e / (2.0 * u * std::log(u)), u);
  r.ratio = r.rho / r.lower;
  return r;
}

double rho_lower_bound_onset(const DickmanTable& table, double constant) {
  const double h = table.step();
  const auto first = static_cast<std::size_t>(std::llround(2.0 / h));
  std::size_t onset = first;
  for (std::size_t i = first; i < table.size(); ++i) {
    const double u = static_cast<double>(i) * h;
    const double lower = constant * std::pow(std::numbers::e / (2.0 * u * std::log(u)), u);
    if (table.at(i) < lower) onset = i + 1;
  }
  return static_cast<double>(onset) * h;
}

double sigma_minus_turning_point(const DickmanTable& table) {
  const double h = table.step();
  std::size_t i = table.size() - 1;
  auto sm = [&](std::size_t k) { return static_cast<double>(k) * h * table.at(k); };
  while (i > 0 && sm(i - 1) >= sm(i)) --i;
  return static_cast<double>(i) * h;
}

double order_threshold(const DickmanTable& table, double eta, double delta, double C1,
                       double C2) {
  if (!(eta > 0.0 && eta < 1.0 && delta > 0.0 && delta < 1.0)) {
    throw DomainError("order_threshold: eta and delta must lie in (0, 1)");
  }
  if (!(C1 > 0.0 && C2 > 0.0)) throw DomainError("order_threshold: C1, C2 must be positive");
  const double u = C2 / (eta * delta);
  if (u > table.u_max()) {
    throw RangeError("order_threshold: C2/(eta delta) = " + std::to_string(u) +
                     " exceeds table range " + std::to_string(table.u_max()));
  }
  const double r = table.rho(u);
  if (r <= 0.0) throw RangeError("order_threshold: rho underflowed at u = " + std::to_string(u));
  return C1 / r;
}

}  // namespace charsums
