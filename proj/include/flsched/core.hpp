#pragma once

// Problem model: identical atomic tasks spread over heterogeneous resources,
// each with a non-decreasing cumulative cost function and per-resource
// lower/upper task limits. The objective is the makespan, i.e. the largest
// per-resource cost of the chosen task counts.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace flsched {

using TaskCount = std::int64_t;

/// Raised for contract violations (infeasible instances, undefined costs...).
class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cumulative costs C(0..K) of assigning k tasks to one resource.
///
/// Values are finite, non-negative and non-decreasing. Costs past a
/// resource's upper limit are not stored as infinities; the limit check
/// in validate() plays that role.
class CostTable {
 public:
  CostTable() = default;
  explicit CostTable(std::vector<double> values);

  /// Cost of assigning `count` tasks. Throws "cost undefined for count"
  /// when `count` is outside 0..max_count().
  double at(TaskCount count) const;

  double operator[](std::size_t count) const noexcept { return values_[count]; }

  /// Largest task count with a defined cost.
  TaskCount max_count() const noexcept {
    return static_cast<TaskCount>(values_.size()) - 1;
  }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const CostTable&, const CostTable&) = default;

 private:
  std::vector<double> values_;
};

struct Resource {
  CostTable cost;
  TaskCount lower = 0;
  TaskCount upper = 0;

  Resource() = default;
  /// Requires 0 <= lower <= upper <= cost.max_count().
  Resource(CostTable table, TaskCount lower_limit, TaskCount upper_limit);

  friend bool operator==(const Resource&, const Resource&) = default;
};

/// T tasks and an ordered, non-empty set of resources.
///
/// Every cost table must cover counts 0..T. Instances violating
/// l <= T <= u can be built; schedulers that honour limits reject them.
class Instance {
 public:
  Instance(TaskCount tasks, std::vector<Resource> resources);

  TaskCount tasks() const noexcept { return tasks_; }
  std::size_t size() const noexcept { return resources_.size(); }
  const Resource& operator[](std::size_t i) const noexcept { return resources_[i]; }
  std::span<const Resource> resources() const noexcept { return resources_; }

  TaskCount lower_sum() const noexcept;
  TaskCount upper_sum() const noexcept;

  /// Same resources and tables, limits replaced by 0..T.
  Instance without_limits() const;

 private:
  TaskCount tasks_;
  std::vector<Resource> resources_;
};

struct Assignment {
  std::vector<TaskCount> counts;
  // Greedy heap extractions performed by the producing scheduler.
  TaskCount pops = 0;

  TaskCount total() const noexcept;
};

struct ValidityReport {
  TaskCount assigned = 0;
  TaskCount expected = 0;
  std::vector<std::size_t> below_lower;
  std::vector<std::size_t> above_upper;

  bool sum_ok() const noexcept { return assigned == expected; }
  bool lower_ok() const noexcept { return below_lower.empty(); }
  bool upper_ok() const noexcept { return above_upper.empty(); }
  bool ok() const noexcept { return sum_ok() && lower_ok() && upper_ok(); }
};

/// max_i C_i(counts[i]). Ignores limits.
double makespan(const Instance& instance, std::span<const TaskCount> counts);
inline double makespan(const Instance& instance, const Assignment& assignment) {
  return makespan(instance, assignment.counts);
}

ValidityReport validate(const Instance& instance, const Assignment& assignment);

/// sum L_i <= T <= sum U_i and L_i <= U_i for every resource.
bool feasible(const Instance& instance) noexcept;

/// Throws ScheduleError("infeasible: l <= T <= u violated ...") unless feasible.
void require_feasible(const Instance& instance);

}  // namespace flsched
