#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "flsched/core.hpp"

namespace flsched {

/// Min-heap entry; ordered by (key, resource) so ties go to the lowest index.
struct HeapEntry {
  double key;
  std::size_t resource;
};

/// Called by the greedy schedulers before each step with the counts as they
/// stand and the resource about to receive the next task.
using StepObserver =
    std::function<void(std::span<const TaskCount> counts, std::size_t chosen)>;

/// Optimal makespan under lower/upper limits. Starts every resource at its
/// lower limit, then hands out the remaining T - l tasks one at a time to the
/// resource whose next task is cheapest, C_i(mu_i + 1). The initial heap is
/// built in bulk. Throws ScheduleError on infeasible instances.
Assignment olar(const Instance& instance);
Assignment olar(const Instance& instance, const StepObserver& observer);

/// Equal split; the T mod n leftovers go to the lowest indices.
Assignment fedavg(std::size_t n, TaskCount tasks);

/// Outcome of the threshold binary search shared by both LBAP variants.
struct LbapSearch {
  double threshold = 0.0;
  // Per-resource counts at the threshold, before excess tasks are trimmed.
  std::vector<TaskCount> counts;
};

/// Binary search over the sorted costs for the smallest threshold whose
/// per-resource counts cover T. With `respect_limits` only costs for counts in
/// (L_i, U_i] are searched and counts are clamped to [L_i, U_i]; otherwise
/// limits are treated as 0..T.
LbapSearch lbap_search(const Instance& instance, bool respect_limits);

/// Threshold search plus trimming of excess tasks. Ignores limits.
Assignment fed_lbap(const Instance& instance);

/// Inverse-proportional split by C_i(k); rounding leftovers go one by one in
/// index order. Ignores limits.
Assignment proportional(const Instance& instance, TaskCount k);

/// Proportional split by weights drawn uniformly from [1, 10); leftovers go
/// to random resources drawn from the same stream.
Assignment random_sched(std::size_t n, TaskCount tasks, std::uint64_t seed);

Assignment ext_fed_lbap(const Instance& instance);

/// FedAvg when its split is valid, otherwise the greedy loop keyed on
/// mu_i - floor(T/n).
Assignment ext_fedavg(const Instance& instance);

/// Proportional(k) when valid, otherwise the greedy loop keyed on the
/// linear estimate (mu_i + 1) * C_i(k) / k.
Assignment ext_proportional(const Instance& instance, TaskCount k);

enum class Algorithm {
  Olar,
  FedAvg,
  FedLbap,
  Proportional,
  Random,
  ExtFedAvg,
  ExtFedLbap,
  ExtProportional,
};

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::Olar,      Algorithm::FedAvg,    Algorithm::FedLbap,
    Algorithm::Proportional, Algorithm::Random, Algorithm::ExtFedAvg,
    Algorithm::ExtFedLbap, Algorithm::ExtProportional};

std::string_view to_string(Algorithm algo) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

/// True for the schedulers whose output always satisfies the limits.
bool respects_limits(Algorithm algo) noexcept;

struct SchedulerParams {
  TaskCount k = 1;
  std::uint64_t seed = 0;
};

Assignment run_scheduler(Algorithm algo, const Instance& instance,
                         const SchedulerParams& params = {});

}  // namespace flsched
