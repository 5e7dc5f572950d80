#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "flsched/core.hpp"

namespace flsched {

/// splitmix64 generator. A plain value: copy it to fork a stream.
class RngState {
 public:
  constexpr explicit RngState(std::uint64_t seed = 0) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// 53-bit uniform in [0, 1).
  constexpr double unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [1, 10), one step.
  constexpr double uniform_1_10() noexcept { return 1.0 + 9.0 * unit(); }

  /// Index in 0..bound-1 from one step (floor(unit * bound)).
  std::size_t index(std::size_t bound) noexcept;

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

enum class CostKind { Recursive, Linear, Nlogn, Quadratic };

/// A resource group: all of one kind, or Mixed (block order R, L, N, Q).
enum class Group { Recursive, Linear, Nlogn, Quadratic, Mixed };

inline constexpr std::array<CostKind, 4> kAllKinds = {
    CostKind::Recursive, CostKind::Linear, CostKind::Nlogn, CostKind::Quadratic};
inline constexpr std::array<Group, 5> kAllGroups = {
    Group::Recursive, Group::Linear, Group::Nlogn, Group::Quadratic, Group::Mixed};

std::string_view to_string(CostKind kind) noexcept;
std::string_view to_string(Group group) noexcept;
std::optional<Group> parse_group(std::string_view name) noexcept;

// Closed forms over k = 0..tasks. x*log(x) uses the natural log, 0 at x = 0.
CostTable recursive_table(std::span<const double> increments);
CostTable linear_table(double alpha, double beta, TaskCount tasks);
CostTable nlogn_table(double alpha, double beta, TaskCount tasks);
CostTable quadratic_table(double alpha, double beta, double gamma, TaskCount tasks);

/// Draws the kind's parameters from `rng` in order and materialises C(0..tasks).
/// Recursive draws alpha_0..alpha_T (C(0) = alpha_0); Linear and Nlogn draw
/// alpha, beta; Quadratic draws alpha, beta, gamma.
CostTable gen_table(CostKind kind, RngState& rng, TaskCount tasks);

/// Per-kind resource counts (Recursive, Linear, Nlogn, Quadratic) of a Mixed
/// group of size n: n/4 each, remainder one extra each in that order.
std::array<std::size_t, 4> mixed_composition(std::size_t n) noexcept;

/// Kind of resource `index` within a group of size n.
CostKind kind_of(Group group, std::size_t index, std::size_t n) noexcept;

/// n resources with limits 0..tasks; resource i is drawn from RngState(base_seed + i).
std::vector<Resource> gen_group(Group group, std::size_t n, TaskCount tasks,
                                std::uint64_t base_seed);

}  // namespace flsched
