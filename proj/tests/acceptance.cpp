// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include <CLI11.hpp>

#include "flsched/bench.hpp"
#include "flsched/costgen.hpp"
#include "flsched/instance_io.hpp"
#include "flsched/oracle.hpp"
#include "flsched/schedulers.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace flsched;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Tiny instances shared by criteria 1, 2 and 6: 200 per (group, limited) pair.
std::vector<fixtures::TinyInstance> tiny_suite() {
  std::vector<fixtures::TinyInstance> suite;
  RngState rng(20240601);
  for (Group g : kAllGroups) {
    for (bool limited : {false, true}) {
      for (int i = 0; i < 200; ++i) suite.push_back(fixtures::random_tiny(rng, g, limited));
    }
  }
  return suite;
}

Outcome optimality(const std::vector<fixtures::TinyInstance>& suite) {
  const auto start = Clock::now();
  std::size_t mismatches = 0;
  for (const auto& tiny : suite) {
    const double got = makespan(tiny.instance, olar(tiny.instance));
    if (got != enumerate_optimal(tiny.instance) || got != dp_optimal(tiny.instance).makespan) {
      ++mismatches;
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream out;
  out << suite.size() << " instances, " << mismatches << " mismatches, " << elapsed << " s";
  return {mismatches == 0 && suite.size() >= 2000 && elapsed < 60.0, out.str()};
}

Outcome ext_fed_lbap_optimality(const std::vector<fixtures::TinyInstance>& suite,
                                const fs::path& dump_dir) {
  std::size_t checked = 0;
  std::size_t counterexamples = 0;
  for (const auto& tiny : suite) {
    if (!tiny.limited) continue;
    ++checked;
    const double got = makespan(tiny.instance, ext_fed_lbap(tiny.instance));
    if (got != dp_optimal(tiny.instance).makespan) {
      fs::create_directories(dump_dir);
      save_instance(tiny.instance,
                    dump_dir / ("ext_fed_lbap_" + std::to_string(counterexamples) + ".json"));
      ++counterexamples;
    }
  }
  std::ostringstream out;
  out << checked << " limited instances, " << counterexamples << " counterexamples";
  if (counterexamples) out << " (dumped to " << dump_dir.string() << ")";
  return {counterexamples == 0 && checked > 0, out.str()};
}

Outcome overshoot_regression() {
  const Instance inst = fixtures::overshoot_instance();
  const auto untrimmed = lbap_search(inst, /*respect_limits=*/false);
  const TaskCount raw_sum =
      std::accumulate(untrimmed.counts.begin(), untrimmed.counts.end(), TaskCount{0});
  const double raw_makespan = makespan(inst, untrimmed.counts);
  const Assignment shipped = ext_fed_lbap(inst);
  const double optimum = enumerate_optimal(inst);
  std::ostringstream out;
  out << "untrimmed sum=" << raw_sum << " Cmax=" << raw_makespan
      << "; ext-fed-lbap sum=" << shipped.total() << " Cmax=" << makespan(inst, shipped)
      << "; enumerated optimum=" << optimum;
  const bool pass = raw_sum == 4 && raw_makespan == 1.0 && shipped.total() == 3 &&
                    makespan(inst, shipped) == 1.0 && optimum == 1.0;
  return {pass, out.str()};
}

bench::ScenarioConfig reduced_scenario1() {
  bench::ScenarioConfig c;
  c.scenario = 1;
  for (TaskCount t = 1000; t <= 10000; t += 1000) c.task_grid.push_back(t);
  c.resource_grid = {10, 100};
  c.groups.assign(kAllGroups.begin(), kAllGroups.end());
  c.seeds = {0};
  return c;
}

Outcome scenario1_dominance() {
  const auto start = Clock::now();
  using Key = std::tuple<std::string, std::size_t, TaskCount>;
  std::map<Key, double> olar_at;
  std::vector<bench::ResultRow> rows;
  const auto summary = bench::run_scenario(
      reduced_scenario1(), [&](const bench::ResultRow& row, const Assignment&) {
        rows.push_back(row);
        if (row.scheduler == "olar") olar_at[{row.group, row.n, row.tasks}] = row.makespan;
      });
  std::size_t violations = 0;
  std::set<std::string> variants;
  for (const auto& row : rows) {
    variants.insert(row.scheduler + "/" + row.k_variant + "/" + std::to_string(row.seed));
    if (row.error || olar_at.at({row.group, row.n, row.tasks}) > row.makespan) ++violations;
  }
  const double elapsed = seconds_since(start);
  std::ostringstream out;
  out << summary.rows << " rows (" << olar_at.size() << " grid points, " << variants.size()
      << " variants), " << violations << " violations, " << summary.errors << " errors, "
      << elapsed << " s";
  return {violations == 0 && summary.errors == 0 && olar_at.size() == 100 && elapsed < 300.0,
          out.str()};
}

Outcome mixed_gap() {
  double worst_ratio = std::numeric_limits<double>::infinity();
  bool pass = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst(10000, gen_group(Group::Mixed, 10, 10000, seed * 100));
    const double ratio = makespan(inst, fedavg(10, 10000)) / makespan(inst, olar(inst));
    worst_ratio = std::min(worst_ratio, ratio);
    pass = pass && ratio >= 10.0;
  }
  std::ostringstream out;
  out << "10 base seeds, smallest FedAvg/OLAR ratio " << worst_ratio;
  return {pass, out.str()};
}

Outcome loop_count(const std::vector<fixtures::TinyInstance>& suite) {
  std::size_t runs = 0;
  std::size_t wrong = 0;
  auto check = [&](const Instance& inst) {
    ++runs;
    if (olar(inst).pops != inst.tasks() - inst.lower_sum()) ++wrong;
  };
  for (const auto& tiny : suite) check(tiny.instance);

  TaskCount smallest_l = -1;
  TaskCount largest_l = 0;
  for (Group g : {Group::Linear, Group::Quadratic, Group::Mixed}) {
    for (std::size_t n : {10, 100, 1000}) {
      for (TaskCount t = 1000; t <= 10000; t += 1000) {
        if (n == 1000 && t != 10000) continue;
        const auto resources = gen_group(g, n, t, 600);
        check(Instance(t, resources));
        const Instance limited(t, bench::apply_limits(resources, t, bench::LimitMode::Standard));
        check(limited);
        // l = 4(n - 1) + floor(mean / 4)
        const TaskCount expected_l =
            4 * static_cast<TaskCount>(n - 1) + (t / static_cast<TaskCount>(n)) / 4;
        if (limited.lower_sum() != expected_l) ++wrong;
        smallest_l = smallest_l < 0 ? expected_l : std::min(smallest_l, expected_l);
        largest_l = std::max(largest_l, expected_l);
      }
    }
  }
  std::ostringstream out;
  out << runs << " runs (incl. limited instances with l in [" << smallest_l << ", "
      << largest_l << "]), " << wrong << " with pops != T - l";
  return {wrong == 0, out.str()};
}

double median(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? static_cast<double>(v[m])
                      : 0.5 * static_cast<double>(v[m - 1] + v[m]);
}

Outcome complexity_trend() {
  std::map<std::pair<std::size_t, TaskCount>, std::vector<std::int64_t>> samples;
  auto sweep = [&](std::vector<TaskCount> tasks, std::vector<std::size_t> resources,
                   std::uint64_t shuffle) {
    bench::ScenarioConfig c;
    c.scenario = 2;
    c.task_grid = std::move(tasks);
    c.resource_grid = std::move(resources);
    c.groups = {Group::Linear};
    c.seeds = {0};
    c.samples = 50;
    c.runs_per_sample = 100;
    c.shuffle_seed = shuffle;
    c.variants = {{Algorithm::Olar}};
    bench::run_scenario(c, [&](const bench::ResultRow& row, const Assignment&) {
      samples[{row.n, row.tasks}].push_back(row.time_ns);
    });
  };
  sweep({1000, 10000}, {100}, 0);
  sweep({10000}, {100, 1000}, 1000);

  const double t_small = median(samples.at({100, 1000}));
  const double t_base = median(samples.at({100, 10000}));
  const double t_wide = median(samples.at({1000, 10000}));
  const double growth_n = t_wide / t_base;
  const double growth_t = t_base / t_small;
  std::ostringstream out;
  out << "median per 100 runs: n=100,T=1000 " << t_small / 1e6 << " ms; n=100,T=10000 "
      << t_base / 1e6 << " ms; n=1000,T=10000 " << t_wide / 1e6 << " ms; n x10 -> x"
      << growth_n << " (< 3), T x10 -> x" << growth_t << " (> 2)";
  return {growth_n < 3.0 && growth_t > 2.0, out.str()};
}

Outcome generator_contract() {
  std::size_t tables = 0;
  std::size_t decreasing = 0;
  for (Group g : kAllGroups) {
    for (std::uint64_t seed = 0; seed < 50; seed += 7) {
      for (const auto& r : gen_group(g, 40, 500, seed * 1000)) {
        ++tables;
        const auto v = r.cost.values();
        if (!std::is_sorted(v.begin(), v.end())) ++decreasing;
      }
    }
  }

  constexpr TaskCount kDraws = 100000;
  RngState rng(77);
  const CostTable rec = gen_table(CostKind::Recursive, rng, kDraws);
  const double mean_increment = (rec[kDraws] - rec[0]) / static_cast<double>(kDraws);

  bool reproducible = true;
  for (Group g : kAllGroups) {
    reproducible = reproducible && gen_group(g, 25, 300, 4242) == gen_group(g, 25, 300, 4242);
  }

  std::ostringstream out;
  out << tables << " tables, " << decreasing << " decreasing; recursive mean increment "
      << mean_increment << " (5.5 +/- 0.05); reproducible=" << (reproducible ? "yes" : "no");
  return {decreasing == 0 && std::abs(mean_increment - 5.5) <= 0.05 && reproducible, out.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string dump_dir = "counterexamples";
  std::vector<int> only;
  app.add_option("--dump-dir", dump_dir, "Where counterexample instances are written");
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const auto suite = tiny_suite();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 OLAR optimality on tiny instances", [&] { return optimality(suite); }},
      {"AC2 Ext-Fed-LBAP optimality on limited instances",
       [&] { return ext_fed_lbap_optimality(suite, dump_dir); }},
      {"AC3 Fed-LBAP overshoot regression", overshoot_regression},
      {"AC4 Scenario 1 dominance", scenario1_dominance},
      {"AC5 Mixed-group FedAvg gap >= 10x", mixed_gap},
      {"AC6 Loop count pops = T - l", [&] { return loop_count(suite); }},
      {"AC7 Complexity trend", complexity_trend},
      {"AC8 Generator contract", generator_contract},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), static_cast<int>(i + 1)) == only.end()) {
      continue;
    }
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += outcome.pass ? 0 : 1;
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << criteria[i].first << " :: "
              << outcome.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
