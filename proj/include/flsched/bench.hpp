#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flsched/core.hpp"
#include "flsched/costgen.hpp"
#include "flsched/schedulers.hpp"

namespace flsched::bench {

enum class LimitMode { None, Standard };

/// Sets per-resource limits for T tasks. Standard mode, with mean = floor(T/n):
///   lower = floor(mean/4) for the resource with the largest C(T), 4 otherwise;
///   upper = floor(mean/2) for the resource with the smallest C(T), 2*mean otherwise.
/// Ties pick the lowest index. Needs n >= 2 and distinct arg-max/arg-min.
/// Throws ScheduleError (with l, u and T) if the result is infeasible.
std::vector<Resource> apply_limits(std::vector<Resource> resources, TaskCount tasks,
                                   LimitMode mode);

enum class KRule { None, One, Mean, All };

/// One scheduler column of a scenario, e.g. Proportional(T/n) or Random(seed 1000).
struct Variant {
  Algorithm algo;
  KRule k = KRule::None;
  // Random scheduler seed, added to the row's cost seed.
  std::uint64_t seed_offset = 0;
};

std::string k_label(KRule rule);
TaskCount resolve_k(KRule rule, std::size_t n, TaskCount tasks) noexcept;

struct ScenarioConfig {
  int scenario = 1;
  std::vector<TaskCount> task_grid;
  std::vector<std::size_t> resource_grid;
  std::vector<Group> groups;
  std::vector<std::uint64_t> seeds;  // cost generation base seeds
  std::size_t samples = 1;
  std::size_t runs_per_sample = 1;
  std::uint64_t shuffle_seed = 0;
  // Worker threads for makespan scenarios; timing always runs on one thread.
  std::size_t threads = 1;
  // Overrides the scenario's default scheduler list when non-empty.
  std::vector<Variant> variants;

  bool is_timing() const noexcept { return scenario == 2 || scenario == 4; }
  LimitMode limits() const noexcept {
    return scenario >= 3 ? LimitMode::Standard : LimitMode::None;
  }
  std::vector<Variant> effective_variants() const;
  /// Throws ScheduleError on empty grids, samples == 0 or unknown scenario.
  void check() const;
  /// Closed-form number of rows run_scenario emits.
  std::size_t expected_rows() const;
};

/// Default scheduler list of a scenario.
std::vector<Variant> default_variants(int scenario);

/// The full-size scenario grids. `scale` >= 1 widens grid steps and divides the sample
/// and run counts (never below 1); scale 1 is the full experiment. Timing
/// scenarios return two configs: fixed n = 100, then fixed T = 10,000.
std::vector<ScenarioConfig> scenario_configs(int scenario, std::size_t scale,
                                          std::uint64_t seed);

struct ResultRow {
  int scenario = 0;
  std::string scheduler;
  std::string group;
  std::size_t n = 0;
  TaskCount tasks = 0;
  std::string k_variant;
  std::uint64_t seed = 0;
  double makespan = 0.0;
  std::int64_t time_ns = 0;
  TaskCount pops = 0;
  std::optional<std::string> error;
};

/// Receives each row in canonical order (grid point, group, seed, variant,
/// sample) together with the assignment behind it (empty on error rows).
using RowSink = std::function<void(const ResultRow&, const Assignment&)>;

struct RunSummary {
  std::size_t rows = 0;
  std::size_t errors = 0;
};

RunSummary run_scenario(const ScenarioConfig& config, const RowSink& sink);

inline constexpr const char* kCsvHeader =
    "scenario,scheduler,group,n,T,k,seed,makespan,time_ns,pops";

/// One CSV record without the trailing newline. Error rows carry the literal
/// `error` in the makespan column and pops = -1.
std::string to_csv(const ResultRow& row);

}  // namespace flsched::bench
