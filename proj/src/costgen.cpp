#include "flsched/costgen.hpp"

#include <cmath>

namespace flsched {

std::size_t RngState::index(std::size_t bound) noexcept {
  auto pick = static_cast<std::size_t>(unit() * static_cast<double>(bound));
  // unit() < 1, but the product can round up to bound for huge bounds
  return pick < bound ? pick : bound - 1;
}

std::string_view to_string(CostKind kind) noexcept {
  switch (kind) {
    case CostKind::Recursive: return "recursive";
    case CostKind::Linear: return "linear";
    case CostKind::Nlogn: return "nlogn";
    case CostKind::Quadratic: return "quadratic";
  }
  return "?";
}

std::string_view to_string(Group group) noexcept {
  switch (group) {
    case Group::Recursive: return "recursive";
    case Group::Linear: return "linear";
    case Group::Nlogn: return "nlogn";
    case Group::Quadratic: return "quadratic";
    case Group::Mixed: return "mixed";
  }
  return "?";
}

std::optional<Group> parse_group(std::string_view name) noexcept {
  for (Group g : kAllGroups) {
    if (to_string(g) == name) return g;
  }
  return std::nullopt;
}

namespace {

std::vector<double> evaluate(TaskCount tasks, auto&& f) {
  if (tasks < 0) throw ScheduleError("task count must be non-negative");
  std::vector<double> values(static_cast<std::size_t>(tasks) + 1);
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = f(static_cast<double>(k));
  return values;
}

}  // namespace

CostTable recursive_table(std::span<const double> increments) {
  std::vector<double> values(increments.begin(), increments.end());
  for (std::size_t k = 1; k < values.size(); ++k) values[k] += values[k - 1];
  return CostTable(std::move(values));
}

CostTable linear_table(double alpha, double beta, TaskCount tasks) {
  return CostTable(evaluate(tasks, [&](double x) { return alpha + beta * x; }));
}

CostTable nlogn_table(double alpha, double beta, TaskCount tasks) {
  return CostTable(evaluate(tasks, [&](double x) {
    return x > 0.0 ? alpha + beta * x * std::log(x) : alpha;
  }));
}

CostTable quadratic_table(double alpha, double beta, double gamma, TaskCount tasks) {
  return CostTable(
      evaluate(tasks, [&](double x) { return alpha + beta * x + gamma * x * x; }));
}

CostTable gen_table(CostKind kind, RngState& rng, TaskCount tasks) {
  if (tasks < 0) throw ScheduleError("task count must be non-negative");
  switch (kind) {
    case CostKind::Recursive: {
      std::vector<double> increments(static_cast<std::size_t>(tasks) + 1);
      for (double& a : increments) a = rng.uniform_1_10();
      return recursive_table(increments);
    }
    case CostKind::Linear: {
      const double alpha = rng.uniform_1_10();
      const double beta = rng.uniform_1_10();
      return linear_table(alpha, beta, tasks);
    }
    case CostKind::Nlogn: {
      const double alpha = rng.uniform_1_10();
      const double beta = rng.uniform_1_10();
      return nlogn_table(alpha, beta, tasks);
    }
    case CostKind::Quadratic: {
      const double alpha = rng.uniform_1_10();
      const double beta = rng.uniform_1_10();
      const double gamma = rng.uniform_1_10();
      return quadratic_table(alpha, beta, gamma, tasks);
    }
  }
  throw ScheduleError("unknown cost kind");
}

std::array<std::size_t, 4> mixed_composition(std::size_t n) noexcept {
  std::array<std::size_t, 4> counts{};
  for (std::size_t k = 0; k < 4; ++k) counts[k] = n / 4 + (k < n % 4 ? 1 : 0);
  return counts;
}

CostKind kind_of(Group group, std::size_t index, std::size_t n) noexcept {
  switch (group) {
    case Group::Recursive: return CostKind::Recursive;
    case Group::Linear: return CostKind::Linear;
    case Group::Nlogn: return CostKind::Nlogn;
    case Group::Quadratic: return CostKind::Quadratic;
    case Group::Mixed: break;
  }
  const auto blocks = mixed_composition(n);
  std::size_t end = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    end += blocks[k];
    if (index < end) return kAllKinds[k];
  }
  return CostKind::Quadratic;
}

std::vector<Resource> gen_group(Group group, std::size_t n, TaskCount tasks,
                                std::uint64_t base_seed) {
  if (n < 1) throw ScheduleError("a resource group needs n >= 1");
  std::vector<Resource> resources;
  resources.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RngState rng(base_seed + i);
    resources.emplace_back(gen_table(kind_of(group, i, n), rng, tasks), 0, tasks);
  }
  return resources;
}

}  // namespace flsched
