#include "flsched/oracle.hpp"

#include <algorithm>
#include <limits>

namespace flsched {

namespace {

// Marks "no split of t tasks exists"; larger than any stored cost.
constexpr double kUnreachable = std::numeric_limits<double>::infinity();

double enumerate_from(const Instance& instance, std::size_t i, TaskCount remaining,
                      double current) {
  const Resource& r = instance[i];
  if (i + 1 == instance.size()) {
    if (remaining < r.lower || remaining > r.upper) return kUnreachable;
    return std::max(current, r.cost.at(remaining));
  }
  double best = kUnreachable;
  for (TaskCount x = r.lower; x <= std::min(r.upper, remaining); ++x) {
    best = std::min(best, enumerate_from(instance, i + 1, remaining - x,
                                         std::max(current, r.cost.at(x))));
  }
  return best;
}

}  // namespace

OptimalSchedule dp_optimal(const Instance& instance) {
  require_feasible(instance);
  const std::size_t n = instance.size();
  const TaskCount tasks = instance.tasks();
  const auto width = static_cast<std::size_t>(tasks) + 1;

  // The prefix recurrence is run over the resources in reverse order, so
  // best[i][t] is the optimum for t tasks on resources i..n-1. That lets the
  // reconstruction walk forward and pick the smallest feasible count first.
  std::vector<std::vector<double>> best(n, std::vector<double>(width, kUnreachable));
  {
    const Resource& last = instance[n - 1];
    for (TaskCount t = last.lower; t <= std::min(last.upper, tasks); ++t) {
      best[n - 1][static_cast<std::size_t>(t)] = last.cost.at(t);
    }
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    const Resource& r = instance[i];
    for (TaskCount t = 0; t <= tasks; ++t) {
      double cell = kUnreachable;
      for (TaskCount x = r.lower; x <= std::min(r.upper, t); ++x) {
        const double rest = best[i + 1][static_cast<std::size_t>(t - x)];
        cell = std::min(cell, std::max(r.cost.at(x), rest));
      }
      best[i][static_cast<std::size_t>(t)] = cell;
    }
  }

  OptimalSchedule result;
  result.makespan = best[0][static_cast<std::size_t>(tasks)];
  if (result.makespan == kUnreachable) {
    throw ScheduleError("infeasible: no split satisfies the limits");
  }

  result.assignment.counts.resize(n);
  TaskCount remaining = tasks;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Resource& r = instance[i];
    TaskCount x = r.lower;
    while (r.cost.at(x) > result.makespan ||
           best[i + 1][static_cast<std::size_t>(remaining - x)] > result.makespan) {
      ++x;
    }
    result.assignment.counts[i] = x;
    remaining -= x;
  }
  result.assignment.counts[n - 1] = remaining;
  return result;
}

double enumerate_optimal(const Instance& instance) {
  require_feasible(instance);
  if (instance.size() > kEnumerateMaxResources || instance.tasks() > kEnumerateMaxTasks) {
    throw ScheduleError("enumerate_optimal is limited to n <= 4 and T <= 12");
  }
  return enumerate_from(instance, 0, instance.tasks(), 0.0);
}

}  // namespace flsched
