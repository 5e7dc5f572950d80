#include "flsched/schedulers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flsched/costgen.hpp"

namespace flsched {

namespace {

// std heap algorithms build max-heaps; invert to get the smallest key on top.
struct MinFirst {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const noexcept {
    if (a.key != b.key) return a.key > b.key;
    return a.resource > b.resource;
  }
};

// Shared loop of OLAR, Ext-FedAvg and Ext-Proportional: start at the lower
// limits and give each of the T - l remaining tasks to the resource with the
// smallest key(i, mu_i). Resources at their upper limit leave the heap.
template <typename KeyFn>
Assignment greedy_fill(const Instance& instance, KeyFn&& key,
                       const StepObserver* observer = nullptr) {
  require_feasible(instance);
  const std::size_t n = instance.size();
  Assignment result;
  result.counts.resize(n);

  std::vector<HeapEntry> heap;
  heap.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    result.counts[i] = instance[i].lower;
    if (result.counts[i] < instance[i].upper) {
      heap.push_back({key(i, result.counts[i]), i});
    }
  }
  std::make_heap(heap.begin(), heap.end(), MinFirst{});

  const TaskCount steps = instance.tasks() - instance.lower_sum();
  for (TaskCount t = 0; t < steps; ++t) {
    std::pop_heap(heap.begin(), heap.end(), MinFirst{});
    const std::size_t j = heap.back().resource;
    if (observer) (*observer)(result.counts, j);
    ++result.pops;
    TaskCount& mu = result.counts[j];
    ++mu;
    if (mu < instance[j].upper) {
      heap.back().key = key(j, mu);
      std::push_heap(heap.begin(), heap.end(), MinFirst{});
    } else {
      heap.pop_back();
    }
  }
  return result;
}

Assignment olar_impl(const Instance& instance, const StepObserver* observer) {
  return greedy_fill(
      instance,
      [&](std::size_t i, TaskCount mu) {
        return instance[i].cost[static_cast<std::size_t>(mu + 1)];
      },
      observer);
}

// Rounding in floor(T * w_i / W) can leave the floors summing to T + 1 or
// more; take the surplus back from the highest indices.
void drop_rounding_surplus(std::vector<TaskCount>& counts, TaskCount tasks) {
  TaskCount surplus = std::accumulate(counts.begin(), counts.end(), TaskCount{0}) - tasks;
  for (std::size_t i = counts.size(); i-- > 0 && surplus > 0;) {
    const TaskCount take = std::min(surplus, counts[i]);
    counts[i] -= take;
    surplus -= take;
  }
}

std::vector<TaskCount> proportional_floors(std::span<const double> weights,
                                           TaskCount tasks) {
  double total = 0.0;
  for (double w : weights) total += w;
  std::vector<TaskCount> counts(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    counts[i] = static_cast<TaskCount>(
        std::floor(static_cast<double>(tasks) * weights[i] / total));
  }
  drop_rounding_surplus(counts, tasks);
  return counts;
}

// Largest count in [lo, hi] whose cost is <= threshold, or lo - 1 if none.
TaskCount last_count_within(const CostTable& table, TaskCount lo, TaskCount hi,
                            double threshold) {
  const auto values = table.values();
  const auto first = values.begin() + lo;
  const auto last = values.begin() + hi + 1;
  const auto it = std::upper_bound(first, last, threshold);
  return lo + static_cast<TaskCount>(it - first) - 1;
}

struct Bounds {
  TaskCount lower;
  TaskCount upper;
};

std::vector<Bounds> lbap_bounds(const Instance& instance, bool respect_limits) {
  std::vector<Bounds> bounds(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    bounds[i] = respect_limits ? Bounds{instance[i].lower, instance[i].upper}
                               : Bounds{0, instance.tasks()};
  }
  return bounds;
}

std::vector<TaskCount> counts_at(const Instance& instance,
                                 std::span<const Bounds> bounds, double threshold) {
  std::vector<TaskCount> counts(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const TaskCount k =
        last_count_within(instance[i].cost, 0, bounds[i].upper, threshold);
    counts[i] = std::clamp(k, bounds[i].lower, bounds[i].upper);
  }
  return counts;
}

TaskCount sum(std::span<const TaskCount> counts) {
  return std::accumulate(counts.begin(), counts.end(), TaskCount{0});
}

// Removes tasks one at a time from the resource with the largest current cost
// C_i(x_i) (lowest index on ties), never going below the lower bound.
void trim_excess(const Instance& instance, std::span<const Bounds> bounds,
                 std::vector<TaskCount>& counts) {
  TaskCount excess = sum(counts) - instance.tasks();
  if (excess <= 0) return;
  auto largest_first = [](const HeapEntry& a, const HeapEntry& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.resource > b.resource;
  };
  std::vector<HeapEntry> heap;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > bounds[i].lower) {
      heap.push_back({instance[i].cost[static_cast<std::size_t>(counts[i])], i});
    }
  }
  std::make_heap(heap.begin(), heap.end(), largest_first);
  for (; excess > 0; --excess) {
    std::pop_heap(heap.begin(), heap.end(), largest_first);
    const std::size_t i = heap.back().resource;
    --counts[i];
    if (counts[i] > bounds[i].lower) {
      heap.back().key = instance[i].cost[static_cast<std::size_t>(counts[i])];
      std::push_heap(heap.begin(), heap.end(), largest_first);
    } else {
      heap.pop_back();
    }
  }
}

Assignment lbap_schedule(const Instance& instance, bool respect_limits) {
  LbapSearch search = lbap_search(instance, respect_limits);
  trim_excess(instance, lbap_bounds(instance, respect_limits), search.counts);
  return Assignment{std::move(search.counts), 0};
}

void require_valid_k(const Instance& instance, TaskCount k) {
  if (k < 1 || k > instance.tasks()) {
    throw ScheduleError("proportional requires 1 <= k <= T (k=" + std::to_string(k) +
                        ", T=" + std::to_string(instance.tasks()) + ")");
  }
  for (const auto& r : instance.resources()) {
    if (r.cost[static_cast<std::size_t>(k)] <= 0.0) {
      throw ScheduleError("zero cost breaks inverse proportion");
    }
  }
}

}  // namespace

Assignment olar(const Instance& instance) { return olar_impl(instance, nullptr); }

Assignment olar(const Instance& instance, const StepObserver& observer) {
  return olar_impl(instance, &observer);
}

Assignment fedavg(std::size_t n, TaskCount tasks) {
  if (n < 1) throw ScheduleError("fedavg needs at least one resource");
  if (tasks < 0) throw ScheduleError("task count must be non-negative");
  const auto share = tasks / static_cast<TaskCount>(n);
  const auto extra = static_cast<std::size_t>(tasks % static_cast<TaskCount>(n));
  Assignment result;
  result.counts.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.counts[i] = share + (i < extra ? 1 : 0);
  return result;
}

LbapSearch lbap_search(const Instance& instance, bool respect_limits) {
  const auto bounds = lbap_bounds(instance, respect_limits);

  std::vector<double> sorted;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const auto values = instance[i].cost.values();
    sorted.insert(sorted.end(), values.begin() + bounds[i].lower + 1,
                  values.begin() + bounds[i].upper + 1);
  }

  LbapSearch result;
  if (sorted.empty()) {
    // Every resource is pinned (L_i = U_i, or T = 0): nothing to search.
    result.counts.resize(instance.size());
    for (std::size_t i = 0; i < instance.size(); ++i) result.counts[i] = bounds[i].lower;
    result.threshold = makespan(instance, result.counts);
    return result;
  }
  std::sort(sorted.begin(), sorted.end());

  const TaskCount tasks = instance.tasks();
  std::size_t lo = 0;
  std::size_t hi = sorted.size() - 1;
  while (lo < hi) {
    const std::size_t median = lo + (hi - lo) / 2;
    const TaskCount covered = sum(counts_at(instance, bounds, sorted[median]));
    if (covered >= tasks) {
      hi = median;
    } else {
      lo = median + 1;
    }
  }
  result.threshold = sorted[lo];
  result.counts = counts_at(instance, bounds, result.threshold);
  if (sum(result.counts) < tasks) {
    result.threshold = sorted[hi];
    result.counts = counts_at(instance, bounds, result.threshold);
  }
  return result;
}

Assignment fed_lbap(const Instance& instance) {
  return lbap_schedule(instance, /*respect_limits=*/false);
}

Assignment ext_fed_lbap(const Instance& instance) {
  require_feasible(instance);
  return lbap_schedule(instance, /*respect_limits=*/true);
}

Assignment proportional(const Instance& instance, TaskCount k) {
  require_valid_k(instance, k);
  const std::size_t n = instance.size();
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = 1.0 / instance[i].cost[static_cast<std::size_t>(k)];
  }
  Assignment result{proportional_floors(weights, instance.tasks()), 0};
  TaskCount leftover = instance.tasks() - result.total();
  for (std::size_t i = 0; leftover > 0; i = (i + 1) % n, --leftover) {
    ++result.counts[i];
  }
  return result;
}

Assignment random_sched(std::size_t n, TaskCount tasks, std::uint64_t seed) {
  if (n < 1) throw ScheduleError("random scheduler needs at least one resource");
  if (tasks < 0) throw ScheduleError("task count must be non-negative");
  RngState rng(seed);
  std::vector<double> weights(n);
  for (double& w : weights) w = rng.uniform_1_10();
  Assignment result{proportional_floors(weights, tasks), 0};
  for (TaskCount leftover = tasks - result.total(); leftover > 0; --leftover) {
    ++result.counts[rng.index(n)];
  }
  return result;
}

Assignment ext_fedavg(const Instance& instance) {
  require_feasible(instance);
  Assignment plain = fedavg(instance.size(), instance.tasks());
  if (validate(instance, plain).ok()) return plain;
  const auto mean = static_cast<double>(instance.tasks() /
                                        static_cast<TaskCount>(instance.size()));
  return greedy_fill(instance, [mean](std::size_t, TaskCount mu) {
    return static_cast<double>(mu) - mean;
  });
}

Assignment ext_proportional(const Instance& instance, TaskCount k) {
  require_feasible(instance);
  Assignment plain = proportional(instance, k);
  if (validate(instance, plain).ok()) return plain;
  const auto kk = static_cast<std::size_t>(k);
  return greedy_fill(instance, [&](std::size_t i, TaskCount mu) {
    return static_cast<double>(mu + 1) * instance[i].cost[kk] / static_cast<double>(k);
  });
}

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::Olar: return "olar";
    case Algorithm::FedAvg: return "fedavg";
    case Algorithm::FedLbap: return "fed-lbap";
    case Algorithm::Proportional: return "proportional";
    case Algorithm::Random: return "random";
    case Algorithm::ExtFedAvg: return "ext-fedavg";
    case Algorithm::ExtFedLbap: return "ext-fed-lbap";
    case Algorithm::ExtProportional: return "ext-proportional";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  for (Algorithm a : kAllAlgorithms) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

bool respects_limits(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::Olar:
    case Algorithm::ExtFedAvg:
    case Algorithm::ExtFedLbap:
    case Algorithm::ExtProportional:
      return true;
    default:
      return false;
  }
}

Assignment run_scheduler(Algorithm algo, const Instance& instance,
                         const SchedulerParams& params) {
  switch (algo) {
    case Algorithm::Olar: return olar(instance);
    case Algorithm::FedAvg: return fedavg(instance.size(), instance.tasks());
    case Algorithm::FedLbap: return fed_lbap(instance);
    case Algorithm::Proportional: return proportional(instance, params.k);
    case Algorithm::Random: return random_sched(instance.size(), instance.tasks(), params.seed);
    case Algorithm::ExtFedAvg: return ext_fedavg(instance);
    case Algorithm::ExtFedLbap: return ext_fed_lbap(instance);
    case Algorithm::ExtProportional: return ext_proportional(instance, params.k);
  }
  throw ScheduleError("unknown algorithm");
}

}  // namespace flsched
