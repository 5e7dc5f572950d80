#pragma once

#include "flsched/core.hpp"

namespace flsched {

struct OptimalSchedule {
  double makespan = 0.0;
  Assignment assignment;
};

/// Exact minimum makespan by dynamic programming over resource prefixes:
///   M[i][t] = min_{x in [L_i, U_i], x <= t} max(C_i(x), M[i-1][t-x]).
/// The returned assignment is the lexicographically smallest optimal one.
/// Time O(n * T * max U_i); meant for desk-scale instances.
OptimalSchedule dp_optimal(const Instance& instance);

// Scale guard for enumerate_optimal.
inline constexpr std::size_t kEnumerateMaxResources = 4;
inline constexpr TaskCount kEnumerateMaxTasks = 12;

/// Minimum makespan by trying every composition of T within the limits.
/// Only for n <= 4 and T <= 12; throws beyond that.
double enumerate_optimal(const Instance& instance);

}  // namespace flsched
