#include "charsums/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace charsums {

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::info: return "info";
    case Status::skipped: return "skipped";
  }
  return "info";
}

void ExperimentReport::append(const ExperimentReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

void ExperimentReport::sort() {
  auto key = [](const ReportRow& r) {
    return std::tie(r.experiment, r.q, r.d, r.index, r.x, r.metric);
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const ReportRow& a, const ReportRow& b) { return key(a) < key(b); });
}

std::size_t ExperimentReport::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [s](const ReportRow& r) { return r.status == s; }));
}

double safe_ratio(double lhs, double rhs) {
  return rhs > 0.0 ? lhs / rhs : std::numeric_limits<double>::quiet_NaN();
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string index_text(std::int64_t index) { return index < 0 ? "agg" : std::to_string(index); }

}  // namespace

std::string to_csv(const ExperimentReport& report) {
  std::string out = "experiment,q,d,index,x,metric,lhs,rhs,ratio,status,note\r\n";
  for (const auto& r : report.rows) {
    out += csv_field(r.experiment) + ',' + std::to_string(r.q) + ',' + std::to_string(r.d) + ',' +
           index_text(r.index) + ',' + std::to_string(r.x) + ',' + csv_field(r.metric) + ',' +
           fmt_double(r.lhs) + ',' + fmt_double(r.rhs) + ',' + fmt_double(r.ratio) + ',' +
           status_name(r.status) + ',' + csv_field(r.note) + "\r\n";
  }
  return out;
}

std::string to_json(const ExperimentReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"experiment", r.experiment},
                    {"q", r.q},
                    {"d", r.d},
                    {"index", index_text(r.index)},
                    {"x", r.x},
                    {"metric", r.metric},
                    {"lhs", r.lhs},
                    {"rhs", r.rhs},
                    {"ratio", r.ratio},
                    {"status", status_name(r.status)},
                    {"note", r.note}});
  }
  nlohmann::json doc = {{"rows", rows},
                        {"pass", report.count(Status::pass)},
                        {"fail", report.count(Status::fail)}};
  return doc.dump(2) + "\n";
}

std::string to_svg(const ExperimentReport& report, const std::string& metric, bool by_q) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : report.rows) {
    const double xv = static_cast<double>(by_q ? r.q : r.d);
    if (r.metric == metric && std::isfinite(r.ratio) && r.ratio > 0.0 && xv > 0.0) {
      pts.emplace_back(std::log10(xv), std::log10(r.ratio));
    }
  }
  const double W = 640, H = 420, L = 70, R = 20, T = 30, B = 50;
  double x0 = 0, x1 = 1, y0 = -1, y1 = 0;
  if (!pts.empty()) {
    x0 = x1 = pts[0].first;
    y0 = y1 = pts[0].second;
    for (auto [a, b] : pts) {
      x0 = std::min(x0, a), x1 = std::max(x1, a);
      y0 = std::min(y0, b), y1 = std::max(y1, b);
    }
  }
  x0 = std::floor(x0), x1 = std::max(std::ceil(x1), x0 + 1);
  y0 = std::floor(y0), y1 = std::max(std::ceil(y1), y0 + 1);
  auto px = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };

  std::string s;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
                "font-family=\"sans-serif\" font-size=\"12\">\n",
                W, H);
  s += buf;
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"18\">%s</text>\n", L, metric.c_str());
  s += buf;
  for (double v = x0; v <= x1 + 1e-9; v += 1.0) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%g\" x2=\"%.2f\" y2=\"%g\" stroke=\"#ddd\"/>"
                  "<text x=\"%.2f\" y=\"%g\" text-anchor=\"middle\">1e%d</text>\n",
                  px(v), T, px(v), H - B, px(v), H - B + 18, static_cast<int>(v));
    s += buf;
  }
  for (double v = y0; v <= y1 + 1e-9; v += 1.0) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%g\" y1=\"%.2f\" x2=\"%g\" y2=\"%.2f\" stroke=\"#ddd\"/>"
                  "<text x=\"%g\" y=\"%.2f\" text-anchor=\"end\">1e%d</text>\n",
                  L, py(v), W - R, py(v), L - 6, py(v) + 4, static_cast<int>(v));
    s += buf;
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%s</text>\n",
                (L + W - R) / 2, H - 10, by_q ? "q" : "d");
  s += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"14\" y=\"%g\" transform=\"rotate(-90 14 %g)\" "
                "text-anchor=\"middle\">ratio</text>\n",
                (T + H - B) / 2, (T + H - B) / 2);
  s += buf;
  for (auto [a, b] : pts) {
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"#1f77b4\" fill-opacity=\"0.7\"/>\n",
                  px(a), py(b));
    s += buf;
  }
  s += "</svg>\n";
  return s;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void emit_csv(const ExperimentReport& report, const std::string& path) {
  write_text(path, to_csv(report));
}

void emit_plot(const ExperimentReport& report, const std::string& metric, const std::string& path,
               bool by_q) {
  write_text(path, to_svg(report, metric, by_q));
}

}  // namespace charsums
