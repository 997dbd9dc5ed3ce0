// Command-line front end for the sweeps.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "charsums/addcomb.hpp"
#include "charsums/error.hpp"
#include "charsums/experiments.hpp"

namespace {

struct Common {
  std::string config_path;
  std::string out;
  unsigned threads = 1;
  std::string format = "csv";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config_path, "JSON configuration file");
  app->add_option("--out", c.out, "Output directory (overrides out_dir)");
  app->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
}

charsums::ExperimentConfig resolve(const Common& c) {
  auto config = c.config_path.empty() ? charsums::default_config() : charsums::load_config(c.config_path);
  if (!c.out.empty()) config.out_dir = c.out;
  return config;
}

int emit(const std::string& name, const charsums::ExperimentReport& report, const Common& c,
         const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string stem = (fs::path(out_dir) / name).string();
  if (c.format == "json") {
    charsums::write_text(stem + ".json", charsums::to_json(report));
  } else {
    charsums::emit_csv(report, stem + ".csv");
  }
  const std::string metric = charsums::headline_metric(name);
  if (!metric.empty()) charsums::emit_plot(report, metric, stem + ".svg");
  std::printf("%s: %zu rows, %zu pass, %zu fail, %zu skipped -> %s.%s\n", name.c_str(),
              report.rows.size(), report.count(charsums::Status::pass),
              report.count(charsums::Status::fail), report.count(charsums::Status::skipped),
              stem.c_str(), c.format.c_str());
  return report.all_passed() ? 0 : 1;
}

std::vector<std::pair<charsums::u64, charsums::u64>> parse_pairs(const std::vector<std::string>& items) {
  std::vector<std::pair<charsums::u64, charsums::u64>> out;
  for (const auto& s : items) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw charsums::ConfigError("--pairs expects k:l, got '" + s + "'");
    out.emplace_back(std::stoull(s.substr(0, colon)), std::stoull(s.substr(colon + 1)));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Character sum and multiplicative function sweeps"};
  app.require_subcommand(1);

  const char* scans[] = {"levelset-scan", "meansquare-scan", "pv-scan", "elementary-scan"};
  const char* help[] = {"Largest level set against x/(log log d)^(1/25)",
                        "Mean squares over powers, both algorithms",
                        "Average maximal sums over powers and large-sum index sets",
                        "Least non-one value, arguments and friable densities"};
  Common common[4];
  CLI::App* sub[4];
  for (int i = 0; i < 4; ++i) {
    sub[i] = app.add_subcommand(scans[i], help[i]);
    add_common(sub[i], common[i]);
  }

  Common add_common_opts;
  charsums::AddcombOptions add_opts;
  std::vector<std::string> pairs;
  auto* add = app.add_subcommand("addcomb-verify", "Exact additive-combinatorics checks");
  add_common(add, add_common_opts);
  add->add_option("--n-max", add_opts.n_max, "Largest modulus for the brute-force search")
      ->check(CLI::Range(1, static_cast<int>(charsums::kBruteforceMaxN)));
  add->add_option("--pairs", pairs, "k:l pairs, e.g. 2:1 3:2");
  add->add_option("--exhaustive-d", add_opts.exhaustive_d, "Moduli for exhaustive doubling");

  Common dk_common;
  double u_max = 20.0, spacing = 0.05, step = 1e-4;
  auto* dk = app.add_subcommand("dickman-table", "Tabulate rho and u rho(u)");
  add_common(dk, dk_common);
  dk->add_option("--u-max", u_max, "Upper end of the table");
  dk->add_option("--spacing", spacing, "Output spacing");
  dk->add_option("--step", step, "Solver step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (int i = 0; i < 4; ++i) {
      if (!sub[i]->parsed()) continue;
      const auto config = resolve(common[i]);
      charsums::ExperimentReport report;
      switch (i) {
        case 0: report = charsums::run_levelset_scan(config, common[i].threads); break;
        case 1: report = charsums::run_meansquare_scan(config, common[i].threads); break;
        case 2: report = charsums::run_pv_scan(config, common[i].threads); break;
        default: report = charsums::run_elementary_scan(config, common[i].threads); break;
      }
      return emit(scans[i], report, common[i], config.out_dir);
    }
    if (add->parsed()) {
      const auto config = resolve(add_common_opts);
      if (!pairs.empty()) add_opts.pairs = parse_pairs(pairs);
      const auto report = charsums::run_addcomb_verify(config, add_opts, add_common_opts.threads);
      return emit("addcomb-verify", report, add_common_opts, config.out_dir);
    }
    if (dk->parsed()) {
      const auto config = resolve(dk_common);
      std::filesystem::create_directories(config.out_dir);
      const auto path = (std::filesystem::path(config.out_dir) / "dickman-table.csv").string();
      charsums::write_text(path, charsums::dickman_table_csv(u_max, spacing, step));
      std::printf("dickman-table -> %s\n", path.c_str());
      return 0;
    }
  } catch (const charsums::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
