#include "flsched/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace flsched {

CostTable::CostTable(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw ScheduleError("cost table must hold at least C(0)");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k]) || values_[k] < 0.0) {
      throw ScheduleError("cost table entry " + std::to_string(k) +
                          " is not a finite non-negative value");
    }
    if (k > 0 && values_[k] < values_[k - 1]) {
      throw ScheduleError("cost table decreases at count " + std::to_string(k));
    }
  }
}

double CostTable::at(TaskCount count) const {
  if (count < 0 || count > max_count()) {
    throw ScheduleError("cost undefined for count " + std::to_string(count));
  }
  return values_[static_cast<std::size_t>(count)];
}

Resource::Resource(CostTable table, TaskCount lower_limit, TaskCount upper_limit)
    : cost(std::move(table)), lower(lower_limit), upper(upper_limit) {
  if (lower < 0 || lower > upper) {
    throw ScheduleError("resource limits must satisfy 0 <= lower <= upper (got " +
                        std::to_string(lower) + ", " + std::to_string(upper) + ")");
  }
  if (upper > cost.max_count()) {
    throw ScheduleError("upper limit " + std::to_string(upper) +
                        " exceeds the cost table range " +
                        std::to_string(cost.max_count()));
  }
}

Instance::Instance(TaskCount tasks, std::vector<Resource> resources)
    : tasks_(tasks), resources_(std::move(resources)) {
  if (tasks_ < 0) throw ScheduleError("task count must be non-negative");
  if (resources_.empty()) throw ScheduleError("instance needs at least one resource");
  for (std::size_t i = 0; i < resources_.size(); ++i) {
    if (resources_[i].cost.max_count() < tasks_) {
      throw ScheduleError("cost table of resource " + std::to_string(i) +
                          " does not cover " + std::to_string(tasks_) + " tasks");
    }
  }
}

TaskCount Instance::lower_sum() const noexcept {
  TaskCount sum = 0;
  for (const auto& r : resources_) sum += r.lower;
  return sum;
}

TaskCount Instance::upper_sum() const noexcept {
  TaskCount sum = 0;
  for (const auto& r : resources_) sum += r.upper;
  return sum;
}

Instance Instance::without_limits() const {
  std::vector<Resource> unlimited;
  unlimited.reserve(resources_.size());
  for (const auto& r : resources_) unlimited.emplace_back(r.cost, 0, tasks_);
  return Instance(tasks_, std::move(unlimited));
}

TaskCount Assignment::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), TaskCount{0});
}

double makespan(const Instance& instance, std::span<const TaskCount> counts) {
  if (counts.size() != instance.size()) {
    throw ScheduleError("assignment has " + std::to_string(counts.size()) +
                        " entries for " + std::to_string(instance.size()) + " resources");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    worst = std::max(worst, instance[i].cost.at(counts[i]));
  }
  return worst;
}

ValidityReport validate(const Instance& instance, const Assignment& assignment) {
  if (assignment.counts.size() != instance.size()) {
    throw ScheduleError("assignment length does not match the resource count");
  }
  ValidityReport report;
  report.expected = instance.tasks();
  report.assigned = assignment.total();
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (assignment.counts[i] < instance[i].lower) report.below_lower.push_back(i);
    if (assignment.counts[i] > instance[i].upper) report.above_upper.push_back(i);
  }
  return report;
}

bool feasible(const Instance& instance) noexcept {
  for (const auto& r : instance.resources()) {
    if (r.lower > r.upper) return false;
  }
  return instance.lower_sum() <= instance.tasks() &&
         instance.tasks() <= instance.upper_sum();
}

void require_feasible(const Instance& instance) {
  if (!feasible(instance)) {
    throw ScheduleError("infeasible: l <= T <= u violated (l=" +
                        std::to_string(instance.lower_sum()) +
                        ", T=" + std::to_string(instance.tasks()) +
                        ", u=" + std::to_string(instance.upper_sum()) + ")");
  }
}

}  // namespace flsched
