// ppwave: simulate interaction datasets, run the wavelet / KS / GAUE tests
// on event files, and reproduce level and power tables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ppwave/ppwave.hpp"

namespace {

using namespace ppwave;

EventTrain load_train(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_event_train(in);
}

void save_train(const std::string& path, const EventTrain& train) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_event_train(out, train);
}

const std::map<std::string, Side> kSides{{"two_sided", Side::two_sided}, {"nonneg", Side::nonneg}};
const std::map<std::string, GaueRule> kGaueRules{{"two_sided", GaueRule::two_sided},
                                                 {"upper", GaueRule::upper}};

struct SimulateArgs {
  std::string dataset = "Data_80";
  double T = 1.0;
  std::uint64_t seed = 1;
  std::string out_parents = "parents.txt";
  std::string out_children = "children.txt";
};

int run_simulate(const SimulateArgs& a) {
  auto id = parse_dataset(a.dataset);
  if (!id) throw std::invalid_argument("unknown dataset " + a.dataset);
  const auto d = make_dataset(*id, a.T, RngSeed{a.seed, 0});
  save_train(a.out_parents, d.parents);
  save_train(a.out_children, d.children);
  std::cout << "parents: " << d.parents.count() << "  children: " << d.children.count() << '\n';
  return 0;
}

struct TestArgs {
  std::string parents, children;
  std::string method = "wavelet";
  int j0 = 3;
  double scale = 50.0;
  std::string side = "two_sided";
  double alpha = 0.05;
  std::size_t B = 20000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool coefficients = false;
  double delta = 0.01;
  bool delta_grid = false;
  std::string gaue_rule = "two_sided";
  std::string ks_pvalue = "exact";
};

int run_test(const TestArgs& a) {
  const auto parents = load_train(a.parents);
  const auto children = load_train(a.children);
  const double T = parents.window().hi;

  if (a.coefficients) {
    const IndexSet idx(a.j0, kSides.at(a.side));
    const auto p = scale_train(parents, a.scale);
    const auto c = scale_train(children, a.scale);
    const auto f = estimate_coefficients(p, c, idx);
    std::printf("j,k,beta_hat,t_stat\n");
    for (std::size_t i = 0; i < idx.size(); ++i)
      std::printf("%d,%ld,%.12g,%.12g\n", idx[i].j, idx[i].k, f.beta_hat[i], f.t_stat[i]);
    return 0;
  }

  if (a.method == "wavelet") {
    TestConfig cfg;
    cfg.alpha = a.alpha;
    cfg.j0 = a.j0;
    cfg.side = kSides.at(a.side);
    cfg.B = a.B;
    cfg.scale = a.scale;
    cfg.threads = a.threads;
    const auto out = run_multiple_test(parents, children, cfg, RngSeed{a.seed, 0});
    std::printf("decision: %s%s\n", out.reject ? "reject" : "accept",
                out.no_information ? " (no information)" : "");
    std::printf("u_alpha: %.10g\n", out.u_alpha);
    std::printf("j,k,t_stat,threshold,reject,position_original_time,range_original_time\n");
    for (const auto& l : out.lambdas)
      std::printf("%d,%ld,%.12g,%.12g,%d,%.10g,%.10g\n", l.lambda.j, l.lambda.k, l.t_stat,
                  l.threshold, l.single_reject ? 1 : 0, l.position_original, l.range_original);
  } else if (a.method == "ks") {
    const auto r = ks_test(children, children.window(), a.alpha,
                           a.ks_pvalue == "exact" ? KsPValue::exact : KsPValue::asymptotic);
    std::printf("decision: %s%s\n", r.reject ? "reject" : "accept",
                r.no_information ? " (no information)" : "");
    std::printf("d_stat: %.10g\np_value: %.10g\n", r.d_stat, r.p_value);
  } else if (a.method == "gaue") {
    std::vector<GaueResult> results;
    if (a.delta_grid)
      results = gaue_grid(parents, children, T, a.alpha, kGaueRules.at(a.gaue_rule));
    else
      results.push_back(gaue_test(parents, children, T, a.delta, a.alpha, kGaueRules.at(a.gaue_rule)));
    std::printf("delta,x_t,m0_hat,sigma_hat,reject\n");
    for (const auto& g : results)
      std::printf("%.3f,%lld,%.10g,%.10g,%d\n", g.delta, static_cast<long long>(g.x_t), g.m0_hat,
                  g.sigma_hat, g.reject ? 1 : 0);
  } else {
    throw std::invalid_argument("unknown method " + a.method);
  }
  return 0;
}

struct ExperimentArgs {
  std::string config;
  std::vector<std::string> datasets, methods;
  std::size_t R = 0, B = 0;
  int j0 = -1;
  std::string side, gaue_rule;
  double T = 0.0, alpha = 0.0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  unsigned threads = 0;
  bool paper_scale = false;
  std::string out;
};

int run_experiment_cmd(const ExperimentArgs& a, bool level) {
  ExperimentConfig cfg;
  cfg.R = level ? 1000 : 500;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw std::runtime_error("cannot open " + a.config);
    const auto j = nlohmann::json::parse(in);
    // Accept a sidecar written by a previous run as well as a flat config.
    cfg = config_from_json(j.contains("config") ? j.at("config") : j, cfg);
  }
  if (a.paper_scale) cfg.apply_paper_scale(level);
  if (!a.datasets.empty()) {
    cfg.datasets.clear();
    for (const auto& s : a.datasets) {
      auto d = parse_dataset(s);
      if (!d) throw std::invalid_argument("unknown dataset " + s);
      cfg.datasets.push_back(*d);
    }
  }
  if (!a.methods.empty()) {
    cfg.methods.clear();
    for (const auto& s : a.methods) {
      auto m = parse_method(s);
      if (!m) throw std::invalid_argument("unknown method " + s);
      cfg.methods.push_back(*m);
    }
  }
  if (a.R) cfg.R = a.R;
  if (a.B) cfg.B = a.B;
  if (a.j0 >= 0) cfg.j0 = a.j0;
  if (!a.side.empty()) cfg.side = kSides.at(a.side);
  if (!a.gaue_rule.empty()) cfg.gaue_rule = kGaueRules.at(a.gaue_rule);
  if (a.T > 0.0) cfg.T = a.T;
  if (a.alpha > 0.0) cfg.alpha = a.alpha;
  if (a.seed_set) cfg.master_seed = a.seed;
  if (a.threads) cfg.threads = a.threads;
  if (!a.out.empty()) cfg.out = a.out;

  const auto report = level ? run_level_experiment(cfg) : run_power_experiment(cfg);
  if (cfg.out.empty()) {
    write_csv(std::cout, report);
  } else {
    std::ofstream csv(cfg.out);
    if (!csv) throw std::runtime_error("cannot write " + cfg.out);
    write_csv(csv, report);
    std::ofstream side(cfg.out + ".json");
    side << report_sidecar(report).dump(2) << '\n';
    std::cerr << "wrote " << cfg.out << " (" << report.wall_seconds << " s)\n";
  }
  return 0;
}

void add_experiment_options(CLI::App* cmd, ExperimentArgs& a) {
  cmd->add_option("--config", a.config, "JSON configuration file");
  cmd->add_option("--datasets", a.datasets, "Datasets, e.g. Data_10 Data_80r");
  cmd->add_option("--methods", a.methods, "Subset of wavelet ks gaue");
  cmd->add_option("--R", a.R, "Replicates per dataset");
  cmd->add_option("--B", a.B, "Null Monte-Carlo rows (even)");
  cmd->add_option("--j0", a.j0, "Maximal resolution level");
  cmd->add_option("--side", a.side, "two_sided or nonneg")->check(CLI::IsMember({"two_sided", "nonneg"}));
  cmd->add_option("--gaue-rule", a.gaue_rule, "two_sided or upper")
      ->check(CLI::IsMember({"two_sided", "upper"}));
  cmd->add_option("--T", a.T, "Recording length");
  cmd->add_option("--alpha", a.alpha, "Test level");
  cmd->add_option("--seed", a.seed, "Master seed")->each([&](const std::string&) { a.seed_set = true; });
  cmd->add_option("--threads", a.threads, "Worker threads (0 = all cores)");
  cmd->add_flag("--paper-scale", a.paper_scale, "R = 5000 (level) / 1000 (power), B = 20000");
  cmd->add_option("--out", a.out, "CSV output path; a .json sidecar is written next to it");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet tests of interaction between point processes"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Simulate one benchmark dataset");
  c_sim->add_option("--dataset", sim.dataset, "Data_0 ... Data_80r");
  c_sim->add_option("--T", sim.T, "Recording length");
  c_sim->add_option("--seed", sim.seed, "Seed");
  c_sim->add_option("--out-parents", sim.out_parents, "Parent event file");
  c_sim->add_option("--out-children", sim.out_children, "Child event file");

  TestArgs test;
  auto* c_test = app.add_subcommand("test", "Test h = 0 on event files");
  c_test->add_option("--parents", test.parents, "Parent event file")->required();
  c_test->add_option("--children", test.children, "Child event file")->required();
  c_test->add_option("--method", test.method, "wavelet, ks or gaue")
      ->check(CLI::IsMember({"wavelet", "ks", "gaue"}));
  c_test->add_option("--j0", test.j0, "Maximal resolution level");
  c_test->add_option("--scale", test.scale, "Time scaling applied before the wavelet statistics");
  c_test->add_option("--side", test.side, "two_sided or nonneg")->check(CLI::IsMember({"two_sided", "nonneg"}));
  c_test->add_option("--alpha", test.alpha, "Test level");
  c_test->add_option("--B", test.B, "Null Monte-Carlo rows (even)");
  c_test->add_option("--seed", test.seed, "Seed");
  c_test->add_option("--threads", test.threads, "Worker threads (0 = all cores)");
  c_test->add_flag("--coefficients", test.coefficients, "Print beta_hat / t_stat CSV only");
  c_test->add_option("--delta", test.delta, "GAUE delay");
  c_test->add_option("--ks-pvalue", test.ks_pvalue, "exact or asymptotic")
      ->check(CLI::IsMember({"exact", "asymptotic"}));
  c_test->add_option("--gaue-rule", test.gaue_rule, "two_sided or upper")
      ->check(CLI::IsMember({"two_sided", "upper"}));
  c_test->add_flag("--delta-grid", test.delta_grid, "GAUE over delta = 0.001..0.040");

  ExperimentArgs level_args, power_args;
  auto* c_level = app.add_subcommand("level", "Empirical level on Data_0");
  add_experiment_options(c_level, level_args);
  auto* c_power = app.add_subcommand("power", "Empirical power on the benchmark datasets");
  add_experiment_options(c_power, power_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_sim) return run_simulate(sim);
    if (*c_test) return run_test(test);
    if (*c_level) return run_experiment_cmd(level_args, true);
    if (*c_power) return run_experiment_cmd(power_args, false);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
