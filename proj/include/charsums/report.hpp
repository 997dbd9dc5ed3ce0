#pragma once

// Result rows and their CSV, JSON and SVG renderings.

#include <cstdint>
#include <string>
#include <vector>

#include "charsums/arith.hpp"

namespace charsums {

enum class Status { pass, fail, info, skipped };

const char* status_name(Status s);

struct ReportRow {
  std::string experiment;
  u64 q = 0;
  u64 d = 0;
  std::int64_t index = -1;  // power index ell, or -1 for an aggregate row
  u64 x = 0;
  std::string metric;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  Status status = Status::info;
  std::string note;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;

  void add(ReportRow row) { rows.push_back(std::move(row)); }
  void append(const ExperimentReport& other);
  /// Sorts by (experiment, q, d, index, x, metric).
  void sort();
  std::size_t count(Status s) const;
  bool all_passed() const { return count(Status::fail) == 0; }
};

/// lhs / rhs, or NaN when rhs is not positive.
double safe_ratio(double lhs, double rhs);

std::string to_csv(const ExperimentReport& report);
std::string to_json(const ExperimentReport& report);

/// Scatter of ratio against d (or q when `by_q`) on log axes, for rows whose
/// metric equals `metric` and whose ratio is finite and positive.
std::string to_svg(const ExperimentReport& report, const std::string& metric, bool by_q = false);

/// Writes `content` to `path`; throws std::runtime_error naming the path.
void write_text(const std::string& path, const std::string& content);

void emit_csv(const ExperimentReport& report, const std::string& path);
void emit_plot(const ExperimentReport& report, const std::string& metric, const std::string& path,
               bool by_q = false);

}  // namespace charsums
