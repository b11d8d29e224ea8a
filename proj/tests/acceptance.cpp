// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ppwave/ppwave.hpp"

namespace {

using namespace ppwave;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

ExperimentReport level_run() {
  ExperimentConfig cfg;
  cfg.R = 1000;
  cfg.B = 2000;
  cfg.T = 2.0;
  return run_level_experiment(cfg);
}

ExperimentReport power_run() {
  ExperimentConfig cfg;
  cfg.R = 500;
  cfg.B = 2000;
  cfg.datasets.erase(std::remove(cfg.datasets.begin(), cfg.datasets.end(), DatasetId::Data_0),
                     cfg.datasets.end());
  return run_power_experiment(cfg);
}

void criteria_1_2(const ExperimentReport& level) {
  const double w = level.find(DatasetId::Data_0, Method::wavelet)->rate;
  report(1, w >= 0.03 && w <= 0.07, "wavelet level " + fmt("%.4f", w) + " in [0.03; 0.07]");

  const double ks = level.find(DatasetId::Data_0, Method::ks)->rate;
  double gmin = 1.0, gmax = 0.0;
  for (double d : gaue_delta_grid()) {
    const double r = level.find(DatasetId::Data_0, Method::gaue, detail::format_delta(d))->rate;
    gmin = std::min(gmin, r);
    gmax = std::max(gmax, r);
  }
  const bool ok = ks >= 0.035 && ks <= 0.065 && gmin >= 0.03 && gmax <= 0.07;
  report(2, ok, "KS level " + fmt("%.4f", ks) + " in [0.035; 0.065], GAUE level range [" +
                    fmt("%.4f", gmin) + "; " + fmt("%.4f", gmax) + "] within [0.03; 0.07]");
}

void criteria_3_4(const ExperimentReport& power) {
  const DatasetId ladder[] = {DatasetId::Data_10, DatasetId::Data_30, DatasetId::Data_50,
                              DatasetId::Data_80};
  bool ok = true;
  std::string detail = "wavelet ladder";
  for (std::size_t i = 0; i < 4; ++i) {
    const auto* r = power.find(ladder[i], Method::wavelet);
    detail += " " + fmt("%.3f", r->rate);
    if (i > 0) {
      const auto* prev = power.find(ladder[i - 1], Method::wavelet);
      const double hw = std::max(r->ci_halfwidth, prev->ci_halfwidth);
      ok = ok && r->rate - prev->rate > hw;
    }
  }
  const double p80 = power.find(DatasetId::Data_80, Method::wavelet)->rate;
  const double p80r = power.find(DatasetId::Data_80r, Method::wavelet)->rate;
  ok = ok && p80 >= 0.90 && p80r >= 0.85;
  report(3, ok, detail + ", Data_80r " + fmt("%.3f", p80r) + " (>= 0.85)");

  const double gmed = power.find(DatasetId::Data_80r, Method::gaue, "median")->rate;
  double ks_max = 0.0;
  for (auto d : {DatasetId::Data_10r, DatasetId::Data_30r, DatasetId::Data_50r, DatasetId::Data_80r})
    ks_max = std::max(ks_max, power.find(d, Method::ks)->rate);
  report(4, p80r - gmed >= 0.2 && ks_max <= 0.12,
         "Data_80r wavelet " + fmt("%.3f", p80r) + " vs GAUE median " + fmt("%.3f", gmed) +
             ", max KS power on Data_kr " + fmt("%.3f", ks_max) + " (<= 0.12)");
}

void criterion_5() {
  const IndexSet idx(3, Side::two_sided);
  const double scale = 50.0;
  const auto model = dataset_model(DatasetId::Data_80, 1.0);
  const double height = model.theta / scale, lo = scale * model.nu, hi = scale * model.b_support;

  // Closed form against midpoint quadrature of h_s * phi_lambda.
  std::vector<double> beta(idx.size());
  double quad_err = 0.0;
  for (std::size_t p = 0; p < idx.size(); ++p) {
    beta[p] = height * (haar_antiderivative(idx[p], hi) - haar_antiderivative(idx[p], lo));
    const int N = 1 << 20;
    double q = 0.0;
    for (int i = 0; i < N; ++i) q += haar_eval(idx[p], lo + (hi - lo) * (i + 0.5) / N);
    q *= height * (hi - lo) / N;
    quad_err = std::max(quad_err, std::abs(q - beta[p]));
  }

  const int R = 10000;
  std::vector<double> sum(idx.size(), 0.0), sum2(idx.size(), 0.0);
  for (int r = 0; r < R; ++r) {
    const auto d = make_dataset(model, RngSeed{505, static_cast<std::uint64_t>(r)},
                                ParentRegime::observed_only);
    const auto f = estimate_coefficients(scale_train(d.parents, scale), scale_train(d.children, scale), idx);
    for (std::size_t p = 0; p < idx.size(); ++p) {
      sum[p] += f.beta_hat[p];
      sum2[p] += f.beta_hat[p] * f.beta_hat[p];
    }
  }
  double worst = 0.0;
  for (std::size_t p = 0; p < idx.size(); ++p) {
    const double mean = sum[p] / R;
    const double se = std::sqrt((sum2[p] / R - mean * mean) / R);
    worst = std::max(worst, std::abs(mean - beta[p]) / se);
  }
  report(5, worst <= 3.0 && quad_err < 1e-6,
         "max |mean - beta| / SE " + fmt("%.3f", worst) + " over 30 indices (<= 3), quadrature gap " +
             fmt("%.1e", quad_err));
}

void criterion_6() {
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<int> size(0, 200), level(0, 5), coin(0, 1), offset(-64, 64);
  std::uniform_real_distribution<double> len(1.0, 20.0), unit(0.0, 1.0);
  int cascade_bad = 0, count_bad = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const double T = len(rng);
    const int n = size(rng), m = size(rng);
    std::vector<double> p(n), c(m);
    for (auto& x : p) x = T * unit(rng);
    for (auto& x : c) x = -1.0 + (T + 2.0) * unit(rng);
    // Put a third of the children at exact dyadic offsets from some parent.
    for (int i = 0; i < m && n > 0; i += 3) {
      const double u = p[static_cast<std::size_t>(rng() % n)];
      c[i] = std::clamp(u + offset(rng) / 64.0, -1.0, T + 1.0);
    }
    std::sort(p.begin(), p.end());
    std::sort(c.begin(), c.end());

    const IndexSet idx(level(rng), coin(rng) ? Side::two_sided : Side::nonneg);
    const auto field = pair_cascade(c, p, idx);
    for (std::size_t q = 0; q < idx.size(); ++q) {
      std::int64_t naive = 0;
      for (double x : c)
        for (double u : p) naive += haar_sign(idx[q], x - u);
      cascade_bad += field.net[q] != naive;
    }
    for (double delta : gaue_delta_grid()) {
      std::int64_t brute = 0;
      for (double u : p)
        for (double x : c) brute += std::abs(x - u) <= delta;
      count_bad += count_coincidences(p, c, delta) != brute;
    }
  }
  report(6, cascade_bad == 0 && count_bad == 0,
         "cascade mismatches " + std::to_string(cascade_bad) + ", coincidence mismatches " +
             std::to_string(count_bad) + " over 100 instances");
}

void criterion_7(const ExperimentReport& level, const ExperimentReport& power) {
  std::size_t runs = 0, below = 0;
  for (const auto* rep : {&level, &power})
    for (const auto& run : rep->runs)
      for (const auto& rec : run.replicates) {
        ++runs;
        below += rec.u_alpha < level.config.alpha;
      }
  const IndexSet idx(3, Side::two_sided);
  double s = 0.0;
  for (double w : weights(idx)) s += std::exp(-w);
  report(7, runs >= 1000 && below == 0 && s <= 1.0 && std::abs(s - 0.8655) <= 1e-4,
         std::to_string(below) + " of " + std::to_string(runs) + " replicates with u_alpha < alpha, " +
             "sum exp(-w) = " + fmt("%.6f", s));
}

void criterion_8() {
  const double scale = 50.0;
  const auto base = make_dataset(DatasetId::Data_0, 1.0, RngSeed{808, 0});
  const auto fixed = scale_for_test(base.parents, base.children, scale);
  const std::size_t m = fixed.children.count();
  const IndexSet idx(2, Side::two_sided);
  const std::size_t N = 2000;

  std::vector<std::vector<double>> fresh(idx.size());
  CoefficientEstimator est(fixed.parents, idx);
  std::vector<double> beta(idx.size());
  for (std::uint64_t r = 1; fresh[0].size() < N; ++r) {
    const auto d = make_dataset(DatasetId::Data_0, 1.0, RngSeed{809, r});
    const auto s = scale_for_test(base.parents, d.children, scale);
    if (s.children.count() != m) continue;
    est.estimate(s.children.times(), beta);
    for (std::size_t p = 0; p < idx.size(); ++p) fresh[p].push_back(std::abs(beta[p]));
  }
  const auto nulls = simulate_null_stats(fixed.parents, m, idx, N, fixed.obs, RngSeed{810, 0}, 0);
  double pmin = 1.0;
  for (std::size_t p = 0; p < idx.size(); ++p) {
    std::sort(fresh[p].begin(), fresh[p].end());
    const auto col = nulls.sorted_column(p, 0, nulls.rows());
    pmin = std::min(pmin, ks_two_sample_pvalue(fresh[p], col));
  }
  report(8, pmin > 0.01,
         "min two-sample KS p-value " + fmt("%.4f", pmin) + " over " + std::to_string(idx.size()) +
             " indices (m = " + std::to_string(m) + ")");
}

void criterion_9() {
  ExperimentConfig cfg;
  cfg.R = 40;
  cfg.B = 200;
  cfg.master_seed = 909;
  auto csv = [](const ExperimentReport& r) {
    std::ostringstream os;
    write_csv(os, r);
    return os.str();
  };
  cfg.threads = 1;
  const auto a = csv(run_power_experiment(cfg));
  cfg.threads = 4;
  const auto b = csv(run_power_experiment(cfg));
  report(9, a == b, std::string("CSV reports at 1 and 4 threads ") + (a == b ? "identical" : "differ"));
}

}  // namespace

int main() {
  Timer total;
  criterion_6();
  criterion_9();
  criterion_5();
  criterion_8();
  const auto level = level_run();
  criteria_1_2(level);
  const auto power = power_run();
  criteria_3_4(power);
  criterion_7(level, power);
  std::printf("acceptance: %d failure(s), %.1f s\n", failures, total.seconds());
  return failures == 0 ? 0 : 1;
}
