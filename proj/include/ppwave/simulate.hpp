#pragma once

// Simulation of parent trains, aggregated child processes and the nine
// benchmark datasets.

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppwave/process_core.hpp"
#include "ppwave/random.hpp"

namespace ppwave {

/// Homogeneous Poisson process of intensity `rate` on `w`.
inline EventTrain sim_homogeneous_poisson(double rate, const Window& w, Engine& rng) {
  if (!(rate >= 0.0))
    throw std::invalid_argument("sim_homogeneous_poisson: rate must be >= 0");
  const double mean = rate * w.length();
  std::vector<double> times;
  if (mean > 0.0) {
    const auto n = std::poisson_distribution<long>(mean)(rng);
    std::uniform_real_distribution<double> unif(w.lo, w.hi);
    times.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) times.push_back(unif(rng));
  }
  return EventTrain(std::move(times), w);
}

inline EventTrain sim_homogeneous_poisson(double rate, const Window& w, RngSeed seed) {
  auto rng = seed.engine();
  return sim_homogeneous_poisson(rate, w, rng);
}

namespace detail {

/// Appends Poisson(theta*(b-nu)) offspring uniform on [U+nu; U+b] for each
/// parent U, keeping those inside `obs`.
inline void append_offspring(std::span<const double> parents, const InteractionModel& model,
                             const Window& obs, Engine& rng, std::vector<double>& times) {
  const double offspring_mean = model.theta * (model.b_support - model.nu);
  if (!(offspring_mean > 0.0)) return;
  std::poisson_distribution<long> n_children(offspring_mean);
  std::uniform_real_distribution<double> offset(model.nu, model.b_support);
  for (double u : parents) {
    const long k = n_children(rng);
    for (long i = 0; i < k; ++i) {
      const double t = u + offset(rng);
      if (obs.contains(t)) times.push_back(t);
    }
  }
}

}  // namespace detail

/// Orphans at rate mu_c on `obs` plus, for each parent U, Poisson(theta*(b-nu))
/// children uniform on [U+nu; U+b].
inline EventTrain sim_child_process(const EventTrain& parents, const InteractionModel& model,
                                    const Window& obs, Engine& rng) {
  model.validate();
  const Window pw = model.parent_window();
  if (!parents.empty() && (parents.times().front() < pw.lo || parents.times().back() > pw.hi))
    throw std::invalid_argument("sim_child_process: parents outside [0;T]");

  std::vector<double> times(sim_homogeneous_poisson(model.mu_c, obs, rng).times());
  detail::append_offspring(parents.times(), model, obs, rng, times);
  return EventTrain(std::move(times), obs);
}

inline EventTrain sim_child_process(const EventTrain& parents, const InteractionModel& model,
                                    RngSeed seed) {
  auto rng = seed.engine();
  return sim_child_process(parents, model, model.child_window(), rng);
}

/// The benchmark datasets: Data_k has theta = k, nu = 0; Data_kr has nu = 0.005.
enum class DatasetId { Data_0, Data_10, Data_30, Data_50, Data_80,
                       Data_10r, Data_30r, Data_50r, Data_80r };

inline constexpr std::array<DatasetId, 9> kAllDatasets{
    DatasetId::Data_0,   DatasetId::Data_10,  DatasetId::Data_30,
    DatasetId::Data_50,  DatasetId::Data_80,  DatasetId::Data_10r,
    DatasetId::Data_30r, DatasetId::Data_50r, DatasetId::Data_80r};

inline constexpr std::string_view to_string(DatasetId id) {
  switch (id) {
    case DatasetId::Data_0: return "Data_0";
    case DatasetId::Data_10: return "Data_10";
    case DatasetId::Data_30: return "Data_30";
    case DatasetId::Data_50: return "Data_50";
    case DatasetId::Data_80: return "Data_80";
    case DatasetId::Data_10r: return "Data_10r";
    case DatasetId::Data_30r: return "Data_30r";
    case DatasetId::Data_50r: return "Data_50r";
    case DatasetId::Data_80r: return "Data_80r";
  }
  return "?";
}

inline std::optional<DatasetId> parse_dataset(std::string_view name) {
  for (auto id : kAllDatasets)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

inline InteractionModel dataset_model(DatasetId id, double T) {
  InteractionModel m;
  m.mu_p = 50.0;
  m.mu_c = 20.0;
  m.b_support = 0.01;
  m.T = T;
  switch (id) {
    case DatasetId::Data_0: m.theta = 0; break;
    case DatasetId::Data_10: m.theta = 10; break;
    case DatasetId::Data_30: m.theta = 30; break;
    case DatasetId::Data_50: m.theta = 50; break;
    case DatasetId::Data_80: m.theta = 80; break;
    case DatasetId::Data_10r: m.theta = 10; m.nu = 0.005; break;
    case DatasetId::Data_30r: m.theta = 30; m.nu = 0.005; break;
    case DatasetId::Data_50r: m.theta = 50; m.nu = 0.005; break;
    case DatasetId::Data_80r: m.theta = 80; m.nu = 0.005; break;
  }
  return m;
}

struct Dataset {
  EventTrain parents;   // on [0;T]
  EventTrain children;  // on [-1;T+1]
};

/// Which parents drive the children.
enum class ParentRegime {
  /// Parents are a stationary process on the whole line; children in
  /// [-1;T+1] receive offspring from parents outside [0;T] as well, but only
  /// the parents in [0;T] are observed.
  stationary,
  /// Only the parents observed on [0;T] have offspring.
  observed_only,
};

/// Draws one replicate of a benchmark dataset in original (unscaled) time.
inline Dataset make_dataset(const InteractionModel& model, RngSeed seed,
                            ParentRegime regime = ParentRegime::stationary) {
  model.validate();
  auto rng = seed.engine();
  Dataset d;
  const Window obs = model.child_window();
  if (regime == ParentRegime::observed_only) {
    d.parents = sim_homogeneous_poisson(model.mu_p, model.parent_window(), rng);
    d.children = sim_child_process(d.parents, model, obs, rng);
    return d;
  }
  // Every parent that can have offspring in obs lies in [lo - b; hi - nu].
  const Window driving(obs.lo - model.b_support, obs.hi - model.nu);
  const auto all_parents = sim_homogeneous_poisson(model.mu_p, driving, rng);
  std::vector<double> times(sim_homogeneous_poisson(model.mu_c, obs, rng).times());
  detail::append_offspring(all_parents.times(), model, obs, rng, times);
  d.children = EventTrain(std::move(times), obs);
  d.parents = restrict_to(all_parents, model.parent_window());
  return d;
}

inline Dataset make_dataset(DatasetId id, double T, RngSeed seed,
                            ParentRegime regime = ParentRegime::stationary) {
  return make_dataset(dataset_model(id, T), seed, regime);
}

}  // namespace ppwave
