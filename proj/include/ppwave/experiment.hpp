#pragma once

// Replicate driver for empirical level and power of the wavelet, KS and GAUE
// tests on the benchmark datasets, with CSV and JSON output.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ppwave/adaptive_test.hpp"
#include "ppwave/baselines.hpp"
#include "ppwave/parallel.hpp"
#include "ppwave/simulate.hpp"

namespace ppwave {

enum class Method { wavelet, ks, gaue };

inline constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::wavelet: return "wavelet";
    case Method::ks: return "ks";
    case Method::gaue: return "gaue";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
  for (auto m : {Method::wavelet, Method::ks, Method::gaue})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

struct ExperimentConfig {
  std::vector<DatasetId> datasets{kAllDatasets.begin(), kAllDatasets.end()};
  std::vector<Method> methods{Method::wavelet, Method::ks, Method::gaue};
  double alpha = 0.05;
  std::size_t R = 1000;
  std::size_t B = 2000;
  int j0 = 3;
  Side side = Side::two_sided;
  GaueRule gaue_rule = GaueRule::two_sided;
  double T = 1.0;
  double scale = 50.0;
  std::uint64_t master_seed = 1;
  unsigned threads = 0;
  std::string out;

  bool uses(Method m) const { return std::find(methods.begin(), methods.end(), m) != methods.end(); }

  void validate() const {
    if (R < 1) throw std::invalid_argument("ExperimentConfig: R must be >= 1");
    if (B < 2 || B % 2 != 0) throw std::invalid_argument("ExperimentConfig: B must be even and >= 2");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("ExperimentConfig: alpha must lie in (0;1)");
    if (!(T > 0.04)) throw std::invalid_argument("ExperimentConfig: T must exceed the largest GAUE delta");
    if (!(scale > 0.0)) throw std::invalid_argument("ExperimentConfig: scale must be > 0");
    if (datasets.empty() || methods.empty())
      throw std::invalid_argument("ExperimentConfig: need at least one dataset and one method");
  }

  /// Full-scale replicate counts: R = 5000 for the level, 1000 for powers, B = 20000.
  void apply_paper_scale(bool level) {
    R = level ? 5000 : 1000;
    B = 20000;
  }

  TestConfig test_config() const {
    TestConfig t;
    t.alpha = alpha;
    t.j0 = j0;
    t.side = side;
    t.B = B;
    t.scale = scale;
    t.threads = 1;
    return t;
  }
};

/// Outcome of every method on one simulated replicate.
struct ReplicateRecord {
  bool wavelet_reject = false;
  bool wavelet_no_information = false;
  double u_alpha = 0.0;
  bool ks_reject = false;
  std::vector<char> gaue_reject;  // one per grid delta
};

struct ReportRow {
  DatasetId dataset;
  Method method;
  std::string delta_summary;  // "-", "min", "median", "max" or the delta value
  double rate = 0.0;
  double ci_halfwidth = 0.0;
  std::size_t R = 0;
};

struct DatasetRun {
  DatasetId dataset;
  std::vector<ReplicateRecord> replicates;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ReportRow> rows;
  std::vector<DatasetRun> runs;
  double wall_seconds = 0.0;

  const ReportRow* find(DatasetId d, Method m, std::string_view summary = "-") const {
    for (const auto& r : rows)
      if (r.dataset == d && r.method == m && r.delta_summary == summary) return &r;
    return nullptr;
  }
};

/// 1.96 sqrt(p (1 - p) / R).
inline double binomial_ci_halfwidth(double p, std::size_t R) {
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(R));
}

/// Seed of replicate r of dataset `d`: independent of scheduling and thread count.
inline RngSeed replicate_seed(std::uint64_t master, DatasetId d, std::size_t r) {
  return {master, RngSeed::mix(static_cast<std::uint64_t>(d) + 1, r)};
}

inline ReplicateRecord run_replicate(const ExperimentConfig& cfg, DatasetId d, std::size_t r) {
  const RngSeed seed = replicate_seed(cfg.master_seed, d, r);
  const Dataset data = make_dataset(d, cfg.T, seed.child(0));
  ReplicateRecord rec;
  if (cfg.uses(Method::wavelet)) {
    const auto out = run_multiple_test(data.parents, data.children, cfg.test_config(), seed.child(1));
    rec.wavelet_reject = out.reject;
    rec.wavelet_no_information = out.no_information;
    rec.u_alpha = out.u_alpha;
  }
  if (cfg.uses(Method::ks))
    rec.ks_reject = ks_test(data.children, data.children.window(), cfg.alpha).reject;
  if (cfg.uses(Method::gaue)) {
    for (const auto& g : gaue_grid(data.parents, data.children, cfg.T, cfg.alpha, cfg.gaue_rule))
      rec.gaue_reject.push_back(g.reject ? 1 : 0);
  }
  return rec;
}

namespace detail {

inline std::string format_delta(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", d);
  return buf;
}

inline ReportRow make_row(DatasetId d, Method m, std::string summary, std::size_t hits,
                          std::size_t R) {
  const double p = static_cast<double>(hits) / static_cast<double>(R);
  return {d, m, std::move(summary), p, binomial_ci_halfwidth(p, R), R};
}

inline void summarize(const ExperimentConfig& cfg, const DatasetRun& run,
                      std::vector<ReportRow>& rows) {
  const std::size_t R = run.replicates.size();
  if (cfg.uses(Method::wavelet)) {
    std::size_t hits = 0;
    for (const auto& rec : run.replicates) hits += rec.wavelet_reject;
    rows.push_back(make_row(run.dataset, Method::wavelet, "-", hits, R));
  }
  if (cfg.uses(Method::ks)) {
    std::size_t hits = 0;
    for (const auto& rec : run.replicates) hits += rec.ks_reject;
    rows.push_back(make_row(run.dataset, Method::ks, "-", hits, R));
  }
  if (cfg.uses(Method::gaue)) {
    const auto grid = gaue_delta_grid();
    std::vector<std::size_t> hits(grid.size(), 0);
    for (const auto& rec : run.replicates)
      for (std::size_t i = 0; i < grid.size(); ++i) hits[i] += rec.gaue_reject[i];
    std::vector<std::size_t> sorted = hits;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t G = sorted.size();
    rows.push_back(make_row(run.dataset, Method::gaue, "min", sorted.front(), R));
    // Median of an even-sized grid: mean of the two central rates.
    ReportRow med = make_row(run.dataset, Method::gaue, "median", sorted[(G - 1) / 2], R);
    med.rate = 0.5 * static_cast<double>(sorted[(G - 1) / 2] + sorted[G / 2]) / static_cast<double>(R);
    med.ci_halfwidth = binomial_ci_halfwidth(med.rate, R);
    rows.push_back(med);
    rows.push_back(make_row(run.dataset, Method::gaue, "max", sorted.back(), R));
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows.push_back(make_row(run.dataset, Method::gaue, format_delta(grid[i]), hits[i], R));
  }
}

}  // namespace detail

/// Runs every configured method on R replicates of each dataset in `datasets`.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg,
                                       const std::vector<DatasetId>& datasets) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.config = cfg;
  for (auto d : datasets) report.runs.push_back({d, std::vector<ReplicateRecord>(cfg.R)});

  const std::size_t total = datasets.size() * cfg.R;
  parallel_for(total, cfg.threads, [&](unsigned, std::size_t i) {
    auto& run = report.runs[i / cfg.R];
    run.replicates[i % cfg.R] = run_replicate(cfg, run.dataset, i % cfg.R);
  });

  for (const auto& run : report.runs) detail::summarize(cfg, run, report.rows);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Empirical level: R replicates of Data_0.
inline ExperimentReport run_level_experiment(const ExperimentConfig& cfg) {
  if (std::find(cfg.datasets.begin(), cfg.datasets.end(), DatasetId::Data_0) == cfg.datasets.end())
    throw std::invalid_argument("run_level_experiment: Data_0 must be among the datasets");
  return run_experiment(cfg, {DatasetId::Data_0});
}

/// Empirical power on the configured datasets, in table order.
inline ExperimentReport run_power_experiment(const ExperimentConfig& cfg) {
  std::vector<DatasetId> ordered;
  for (auto d : kAllDatasets)
    if (std::find(cfg.datasets.begin(), cfg.datasets.end(), d) != cfg.datasets.end())
      ordered.push_back(d);
  return run_experiment(cfg, ordered);
}

inline void write_csv(std::ostream& os, const ExperimentReport& report) {
  os << "dataset,method,delta_summary,rate,ci_halfwidth,R\n";
  char buf[64];
  for (const auto& r : report.rows) {
    os << to_string(r.dataset) << ',' << to_string(r.method) << ',' << r.delta_summary << ',';
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,", r.rate, r.ci_halfwidth);
    os << buf << r.R << '\n';
  }
}

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  auto& ds = j["datasets"] = nlohmann::json::array();
  for (auto d : cfg.datasets) ds.push_back(std::string(to_string(d)));
  auto& ms = j["methods"] = nlohmann::json::array();
  for (auto m : cfg.methods) ms.push_back(std::string(to_string(m)));
  j["alpha"] = cfg.alpha;
  j["R"] = cfg.R;
  j["B"] = cfg.B;
  j["j0"] = cfg.j0;
  j["side"] = std::string(to_string(cfg.side));
  j["gaue_rule"] = std::string(to_string(cfg.gaue_rule));
  j["T"] = cfg.T;
  j["scale"] = cfg.scale;
  j["seed"] = cfg.master_seed;
  j["threads"] = cfg.threads;
  j["out"] = cfg.out;
  return j;
}

/// Reads any subset of the keys written by config_to_json over `base`.
inline ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {}) {
  if (j.contains("datasets")) {
    base.datasets.clear();
    for (const auto& s : j.at("datasets")) {
      auto d = parse_dataset(s.get<std::string>());
      if (!d) throw std::invalid_argument("config: unknown dataset " + s.get<std::string>());
      base.datasets.push_back(*d);
    }
  }
  if (j.contains("methods")) {
    base.methods.clear();
    for (const auto& s : j.at("methods")) {
      auto m = parse_method(s.get<std::string>());
      if (!m) throw std::invalid_argument("config: unknown method " + s.get<std::string>());
      base.methods.push_back(*m);
    }
  }
  if (j.contains("alpha")) base.alpha = j.at("alpha").get<double>();
  if (j.contains("R")) base.R = j.at("R").get<std::size_t>();
  if (j.contains("B")) base.B = j.at("B").get<std::size_t>();
  if (j.contains("j0")) base.j0 = j.at("j0").get<int>();
  if (j.contains("side")) {
    const auto s = j.at("side").get<std::string>();
    if (s == "two_sided") base.side = Side::two_sided;
    else if (s == "nonneg") base.side = Side::nonneg;
    else throw std::invalid_argument("config: side must be two_sided or nonneg");
  }
  if (j.contains("gaue_rule")) {
    const auto s = j.at("gaue_rule").get<std::string>();
    if (s == "two_sided") base.gaue_rule = GaueRule::two_sided;
    else if (s == "upper") base.gaue_rule = GaueRule::upper;
    else throw std::invalid_argument("config: gaue_rule must be two_sided or upper");
  }
  if (j.contains("T")) base.T = j.at("T").get<double>();
  if (j.contains("scale")) base.scale = j.at("scale").get<double>();
  if (j.contains("seed")) base.master_seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("threads")) base.threads = j.at("threads").get<unsigned>();
  if (j.contains("out")) base.out = j.at("out").get<std::string>();
  return base;
}

/// Sidecar: full configuration plus run metadata.
inline nlohmann::json report_sidecar(const ExperimentReport& report) {
  nlohmann::json j;
  j["config"] = config_to_json(report.config);
  j["wall_seconds"] = report.wall_seconds;
  j["rows"] = report.rows.size();
  return j;
}

}  // namespace ppwave
