#include "flsched/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

namespace flsched::bench {

std::vector<Resource> apply_limits(std::vector<Resource> resources, TaskCount tasks,
                                   LimitMode mode) {
  const std::size_t n = resources.size();
  if (mode == LimitMode::None) {
    for (auto& r : resources) r = Resource(std::move(r.cost), 0, tasks);
    return resources;
  }
  if (n < 2) throw ScheduleError("standard limits need at least two resources");

  std::size_t straggler = 0;
  std::size_t cheapest = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const double c = resources[i].cost.at(tasks);
    if (c > resources[straggler].cost.at(tasks)) straggler = i;
    if (c < resources[cheapest].cost.at(tasks)) cheapest = i;
  }
  if (straggler == cheapest) {
    throw ScheduleError("standard limits need distinct most and least expensive resources");
  }

  const TaskCount mean = tasks / static_cast<TaskCount>(n);
  std::vector<TaskCount> lower(n, 4);
  std::vector<TaskCount> upper(n, 2 * mean);
  lower[straggler] = mean / 4;
  upper[cheapest] = mean / 2;

  TaskCount l = 0;
  TaskCount u = 0;
  bool ordered = true;
  for (std::size_t i = 0; i < n; ++i) {
    l += lower[i];
    u += upper[i];
    ordered = ordered && lower[i] <= upper[i] && upper[i] <= resources[i].cost.max_count();
  }
  if (!ordered || l > tasks || tasks > u) {
    throw ScheduleError("standard limits are infeasible: l=" + std::to_string(l) +
                        ", u=" + std::to_string(u) + ", T=" + std::to_string(tasks));
  }
  for (std::size_t i = 0; i < n; ++i) {
    resources[i] = Resource(std::move(resources[i].cost), lower[i], upper[i]);
  }
  return resources;
}

std::string k_label(KRule rule) {
  switch (rule) {
    case KRule::None: return "";
    case KRule::One: return "1";
    case KRule::Mean: return "T/n";
    case KRule::All: return "T";
  }
  return "";
}

TaskCount resolve_k(KRule rule, std::size_t n, TaskCount tasks) noexcept {
  switch (rule) {
    case KRule::None: return 0;
    case KRule::One: return 1;
    case KRule::Mean: return tasks / static_cast<TaskCount>(n);
    case KRule::All: return tasks;
  }
  return 0;
}

std::vector<Variant> default_variants(int scenario) {
  switch (scenario) {
    case 1:
      return {{Algorithm::Olar},
              {Algorithm::FedAvg},
              {Algorithm::FedLbap},
              {Algorithm::Proportional, KRule::One},
              {Algorithm::Proportional, KRule::Mean},
              {Algorithm::Proportional, KRule::All},
              {Algorithm::Random, KRule::None, 1000},
              {Algorithm::Random, KRule::None, 2000},
              {Algorithm::Random, KRule::None, 3000}};
    case 2:
      return {{Algorithm::Olar},
              {Algorithm::FedAvg},
              {Algorithm::FedLbap},
              {Algorithm::Proportional, KRule::Mean},
              {Algorithm::Random, KRule::None, 1000}};
    case 3:
      return {{Algorithm::Olar},
              {Algorithm::ExtFedAvg},
              {Algorithm::ExtFedLbap},
              {Algorithm::ExtProportional, KRule::One},
              {Algorithm::ExtProportional, KRule::Mean},
              {Algorithm::ExtProportional, KRule::All}};
    case 4:
      return {{Algorithm::Olar},
              {Algorithm::ExtFedAvg},
              {Algorithm::ExtFedLbap},
              {Algorithm::ExtProportional, KRule::Mean}};
    default:
      throw ScheduleError("unknown scenario " + std::to_string(scenario));
  }
}

std::vector<Variant> ScenarioConfig::effective_variants() const {
  return variants.empty() ? default_variants(scenario) : variants;
}

void ScenarioConfig::check() const {
  if (scenario < 1 || scenario > 4) {
    throw ScheduleError("unknown scenario " + std::to_string(scenario));
  }
  if (task_grid.empty() || resource_grid.empty() || groups.empty() || seeds.empty()) {
    throw ScheduleError("scenario grids must be non-empty");
  }
  if (samples < 1 || runs_per_sample < 1) {
    throw ScheduleError("samples and runs per sample must be at least 1");
  }
}

std::size_t ScenarioConfig::expected_rows() const {
  return task_grid.size() * resource_grid.size() * groups.size() * seeds.size() *
         effective_variants().size() * (is_timing() ? samples : 1);
}

namespace {

std::vector<TaskCount> stepped(TaskCount first, TaskCount last, TaskCount step) {
  std::vector<TaskCount> grid;
  for (TaskCount v = first; v <= last; v += step) grid.push_back(v);
  return grid;
}

}  // namespace

std::vector<ScenarioConfig> scenario_configs(int scenario, std::size_t scale,
                                          std::uint64_t seed) {
  if (scale < 1) throw ScheduleError("scale must be at least 1");
  const auto s = static_cast<TaskCount>(scale);

  ScenarioConfig base;
  base.scenario = scenario;
  base.seeds = {seed};
  switch (scenario) {
    case 1:
      base.task_grid = stepped(1000, 10000, 100 * s);
      base.resource_grid = {10, 100};
      base.groups.assign(kAllGroups.begin(), kAllGroups.end());
      return {base};
    case 3:
      base.task_grid = stepped(1000, 10000, 100 * s);
      base.resource_grid = {100};
      base.groups = {Group::Linear, Group::Quadratic};
      return {base};
    case 2:
    case 4: {
      base.groups = {Group::Linear};
      base.samples = std::max<std::size_t>(1, 50 / scale);
      base.runs_per_sample = std::max<std::size_t>(1, 100 / scale);

      ScenarioConfig fixed_n = base;
      fixed_n.task_grid = stepped(1000, 10000, 1000 * s);
      fixed_n.resource_grid = {100};
      fixed_n.shuffle_seed = scenario == 2 ? seed : seed + 1000;

      ScenarioConfig fixed_t = base;
      fixed_t.task_grid = {10000};
      for (TaskCount n : stepped(100, 1000, 100 * s)) {
        fixed_t.resource_grid.push_back(static_cast<std::size_t>(n));
      }
      fixed_t.shuffle_seed = scenario == 2 ? seed + 1000 : seed + 2000;
      return {fixed_n, fixed_t};
    }
    default:
      throw ScheduleError("unknown scenario " + std::to_string(scenario));
  }
}

namespace {

// One (grid point, group, seed) combination; it owns a single instance.
struct Cell {
  TaskCount tasks;
  std::size_t n;
  Group group;
  std::uint64_t seed;
};

std::vector<Cell> enumerate_cells(const ScenarioConfig& config) {
  std::vector<Cell> cells;
  for (TaskCount t : config.task_grid)
    for (std::size_t n : config.resource_grid)
      for (Group g : config.groups)
        for (std::uint64_t s : config.seeds) cells.push_back({t, n, g, s});
  return cells;
}

Instance build_instance(const Cell& cell, LimitMode limits) {
  return Instance(cell.tasks, apply_limits(gen_group(cell.group, cell.n, cell.tasks, cell.seed),
                                           cell.tasks, limits));
}

ResultRow blank_row(const ScenarioConfig& config, const Cell& cell, const Variant& v) {
  ResultRow row;
  row.scenario = config.scenario;
  row.scheduler = std::string(to_string(v.algo));
  row.group = std::string(to_string(cell.group));
  row.n = cell.n;
  row.tasks = cell.tasks;
  row.k_variant = k_label(v.k);
  row.seed = cell.seed + v.seed_offset;
  return row;
}

SchedulerParams params_for(const Cell& cell, const Variant& v) {
  return {resolve_k(v.k, cell.n, cell.tasks), cell.seed + v.seed_offset};
}

void mark_error(ResultRow& row, std::string message) {
  row.error = std::move(message);
  row.pops = -1;
}

struct Slot {
  ResultRow row;
  Assignment assignment;
};

void run_makespan_cell(const ScenarioConfig& config, const Cell& cell,
                       std::span<const Variant> variants, std::span<Slot> out) {
  std::optional<Instance> instance;
  std::string setup_error;
  try {
    instance.emplace(build_instance(cell, config.limits()));
  } catch (const std::exception& e) {
    setup_error = e.what();
  }
  for (std::size_t v = 0; v < variants.size(); ++v) {
    Slot& slot = out[v];
    slot.row = blank_row(config, cell, variants[v]);
    if (!instance) {
      mark_error(slot.row, setup_error);
      continue;
    }
    try {
      slot.assignment = run_scheduler(variants[v].algo, *instance, params_for(cell, variants[v]));
      slot.row.makespan = makespan(*instance, slot.assignment);
      slot.row.pops = slot.assignment.pops;
    } catch (const std::exception& e) {
      mark_error(slot.row, e.what());
      slot.assignment = {};
    }
  }
}

void run_makespan(const ScenarioConfig& config, std::span<const Cell> cells,
                  std::span<const Variant> variants, std::vector<Slot>& slots) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < cells.size(); c = next++) {
      run_makespan_cell(config, cells[c], variants,
                        std::span(slots).subspan(c * variants.size(), variants.size()));
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(config.threads, 1, cells.size());
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
}

// Keeps recently built instances; rebuilt on demand once the budget is hit.
class InstanceCache {
 public:
  InstanceCache(const ScenarioConfig& config, std::span<const Cell> cells)
      : config_(config), cells_(cells) {}

  std::shared_ptr<const Instance> get(std::size_t cell) {
    if (auto it = cache_.find(cell); it != cache_.end()) return it->second;
    const Cell& c = cells_[cell];
    const std::size_t bytes = c.n * static_cast<std::size_t>(c.tasks + 1) * sizeof(double);
    if (bytes_ + bytes > kBudget) {
      cache_.clear();
      bytes_ = 0;
    }
    auto built = std::make_shared<const Instance>(build_instance(c, config_.limits()));
    cache_.emplace(cell, built);
    bytes_ += bytes;
    return built;
  }

 private:
  static constexpr std::size_t kBudget = std::size_t{512} << 20;
  const ScenarioConfig& config_;
  std::span<const Cell> cells_;
  std::map<std::size_t, std::shared_ptr<const Instance>> cache_;
  std::size_t bytes_ = 0;
};

void run_timing(const ScenarioConfig& config, std::span<const Cell> cells,
                std::span<const Variant> variants, std::vector<Slot>& slots) {
  const std::size_t per_cell = variants.size() * config.samples;
  std::vector<std::size_t> order(slots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  RngState rng(config.shuffle_seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.index(i)]);
  }

  InstanceCache cache(config, cells);
  volatile TaskCount keep = 0;
  for (std::size_t job : order) {
    const std::size_t c = job / per_cell;
    const Variant& variant = variants[(job % per_cell) / config.samples];
    Slot& slot = slots[job];
    slot.row = blank_row(config, cells[c], variant);
    try {
      const auto instance = cache.get(c);
      const SchedulerParams params = params_for(cells[c], variant);
      Assignment result;
      const auto start = std::chrono::steady_clock::now();
      for (std::size_t r = 0; r < config.runs_per_sample; ++r) {
        result = run_scheduler(variant.algo, *instance, params);
        keep = keep + result.pops;
      }
      const auto stop = std::chrono::steady_clock::now();
      slot.row.time_ns =
          std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
      slot.row.makespan = makespan(*instance, result);
      slot.row.pops = result.pops;
      slot.assignment = std::move(result);
    } catch (const std::exception& e) {
      mark_error(slot.row, e.what());
    }
  }
}

}  // namespace

RunSummary run_scenario(const ScenarioConfig& config, const RowSink& sink) {
  config.check();
  const auto cells = enumerate_cells(config);
  const auto variants = config.effective_variants();

  std::vector<Slot> slots(config.expected_rows());
  if (config.is_timing()) {
    run_timing(config, cells, variants, slots);
  } else {
    run_makespan(config, cells, variants, slots);
  }

  RunSummary summary;
  for (const Slot& slot : slots) {
    ++summary.rows;
    if (slot.row.error) ++summary.errors;
    if (sink) sink(slot.row, slot.assignment);
  }
  return summary;
}

std::string to_csv(const ResultRow& row) {
  std::string out;
  out += std::to_string(row.scenario) + ',' + row.scheduler + ',' + row.group + ',' +
         std::to_string(row.n) + ',' + std::to_string(row.tasks) + ',' + row.k_variant +
         ',' + std::to_string(row.seed) + ',';
  if (row.error) {
    out += "error";
  } else {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, row.makespan);
    out.append(buf, res.ptr);
  }
  out += ',' + std::to_string(row.time_ns) + ',' + std::to_string(row.pops);
  return out;
}

}  // namespace flsched::bench
